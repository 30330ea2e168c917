#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "charpoly/ensembles.hpp"
#include "charpoly/matrix_integrals.hpp"
#include "charpoly/rng.hpp"

using namespace charpoly;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

Eigen::MatrixXcd diag(std::initializer_list<double> d) {
    Eigen::VectorXcd v(d.size());
    int i = 0;
    for (double x : d) v[i++] = x;
    return v.asDiagonal();
}

DimSpec half_line(double radius, int nodes) {
    DimSpec d;
    d.kind = DomainKind::half_line;
    d.radius = radius;
    d.nodes = nodes;
    return d;
}

DimSpec finite(double a, double b, int nodes) {
    DimSpec d;
    d.a = a;
    d.b = b;
    d.nodes = nodes;
    return d;
}

// n = 2, diagonal Q: F = [[a, c], [c*, b]] with |c|^2 = a b t, and
// dF = da db 2 dRe c dIm c = 2 pi a b da db dt.
cd ingham_siegel_first_entrywise(int p, double q1, double q2) {
    QuadratureSpec s;
    s.dims = {half_line(60.0 / q1, 96), half_line(60.0 / q2, 96), finite(0, 1, 16)};
    return integrate_nd(
               [&](const double* x) {
                   const double ab = x[0] * x[1];
                   return cd(2 * pi * std::pow(ab, p + 1) * std::pow(1 - x[2], p) * std::exp(-x[0] * q1 - x[1] * q2));
               },
               s)
        .value.to_complex();
}

// int df e^{i f q / 2} (f - mu)^{-N} on [-1000, 1000]
cd ingham_siegel_second_1d(int N, cd mu, double q) {
    cd sum = 0.0;
    for (auto [a, b] : {std::pair{-1000.0, -20.0}, {-20.0, 20.0}, {20.0, 1000.0}}) {
        QuadratureSpec s;
        s.dims = {finite(a, b, std::max(400, oscillation_nodes(q / 2, b - a)))};
        s.max_doublings = 2;
        s.tolerance = 1e-9;
        sum += integrate_nd([&](const double* x) { return std::exp(cd(0, 0.5 * x[0] * q)) * std::pow(x[0] - mu, -N); }, s)
                   .value.to_complex();
    }
    return sum;
}

// 2 pi i (i q / 2)^{N-1} e^{i mu q / 2} / Gamma(N), closing the contour around mu
cd residue_1d(int N, cd mu, double q) {
    return 2 * pi * cd(0, 1) * std::pow(cd(0, q / 2), N - 1) * std::exp(cd(0, 1) * mu * q / 2.0) / std::tgamma(N);
}

// 2 pi int_0^{psi_max} dpsi sinh(2 psi) exp(i N tr), n = 1
cd coset_1d(const SpectralPoint& sp, double q1, double q2, int N, double psi_max) {
    QuadratureSpec s;
    s.dims = {finite(0, psi_max, 256)};
    s.tolerance = 1e-12;
    const cd m1 = sp.mu1(), m2 = sp.mu2_conj();
    return 2 * pi *
           integrate_nd(
               [&](const double* x) {
                   const double ch2 = std::pow(std::cosh(x[0]), 2), sh2 = std::pow(std::sinh(x[0]), 2);
                   const cd tr = q1 * (m1 * ch2 - m2 * sh2) + q2 * (m2 * ch2 - m1 * sh2);
                   return std::sinh(2 * x[0]) * std::exp(cd(0, N) * tr);
               },
               s)
               .value.to_complex();
}

}  // namespace

TEST_SUITE("matrix_integrals") {
    TEST_CASE("positive definite construction") {
        CHECK_THROWS_AS(PositiveDefiniteHermitian(diag({1.0, -0.1})), std::invalid_argument);
        const PositiveDefiniteHermitian q(diag({2.0, 3.0}));
        CHECK(q.log_det() == doctest::Approx(std::log(6.0)));
        for (std::uint64_t k = 0; k < 20; ++k) {
            const auto r = random_positive_definite(3, {k, 0});
            CHECK(r.eigenvalues().front() >= 0.01 - 1e-12);
            CHECK((r.matrix() - r.matrix().adjoint()).norm() == 0.0);
        }
        SignatureMatrix L{2};
        CHECK((L.matrix() * L.matrix() - Eigen::MatrixXcd::Identity(4, 4)).norm() == 0.0);
    }

    TEST_CASE("Ingham-Siegel first type") {
        const PositiveDefiniteHermitian q1(diag({2.5}));
        CHECK(rel(ingham_siegel_first_value(0, q1).to_complex(), 1 / 2.5) < 1e-14);
        CHECK(rel(ingham_siegel_first_value(0, PositiveDefiniteHermitian(diag({1.0, 1.0}))).to_complex(), 2 * pi) < 1e-14);
        for (int p : {0, 1, 2}) {
            const PositiveDefiniteHermitian q(diag({1.3, 0.7}));
            CHECK(rel(ingham_siegel_first_value(p, q).to_complex(), ingham_siegel_first_entrywise(p, 1.3, 0.7)) < 1e-8);
        }
        // depends on Q only through det Q, so unitary rotation leaves it unchanged
        const auto U = sample_haar_unitary(2, {3, 0});
        const PositiveDefiniteHermitian qr(U * diag({1.3, 0.7}) * U.adjoint());
        CHECK(rel(ingham_siegel_first_value(1, qr).to_complex(), ingham_siegel_first_entrywise(1, 1.3, 0.7)) < 1e-8);
    }

    TEST_CASE("Ingham-Siegel second type, n = 1") {
        const cd mu(0.2, 0.5);
        for (double q : {1.0, 2.0}) {
            const cd got = ingham_siegel_second_value(3, mu, diag({q})).to_complex();
            CHECK(rel(got, residue_1d(3, mu, q)) < 1e-12);
            CHECK(rel(got, ingham_siegel_second_1d(3, mu, q)) < 1e-4);
        }
        const cd rs = ingham_siegel_second_realsym_value(3, mu, Eigen::MatrixXd::Constant(1, 1, 2.0)).to_complex();
        CHECK(rel(rs, ingham_siegel_second_value(3, mu, diag({2.0})).to_complex()) < 1e-12);
        CHECK(rel(rs, ingham_siegel_second_1d(3, mu, 2.0)) < 1e-4);
    }

    TEST_CASE("Ingham-Siegel second type vanishes exactly for indefinite Q") {
        const cd mu(0.1, 0.4);
        CHECK(ingham_siegel_second_value(3, mu, diag({1.0, -0.5})).is_zero());
        CHECK(ingham_siegel_second_value(4, mu, diag({-1.0})).is_zero());
        CHECK(ingham_siegel_second_realsym_value(3, mu, Eigen::Vector2d(1.0, -0.5).asDiagonal().toDenseMatrix()).is_zero());
        CHECK_FALSE(ingham_siegel_second_value(3, mu, diag({1.0, 0.5})).is_zero());
        CHECK_THROWS(ingham_siegel_second_value(1, mu, diag({1.0, 0.5})));
        CHECK_THROWS(ingham_siegel_second_value(3, cd(0.1, -0.4), diag({1.0})));
    }

    TEST_CASE("Selberg integral") {
        CHECK(std::abs(selberg_value(1, 1.0) - std::sqrt(2 * pi)) < 1e-14);
        CHECK(std::abs(selberg_value(2, 1.0) - 4 * pi) < 1e-13);
        // xi = x sqrt(2/t) turns the weight into e^{-x^2}
        for (auto [n, t] : {std::pair{2, 1.0}, {3, 2.0}, {3, 0.5}}) {
            const auto r = gauss_hermite_rule(10);
            const double sc = std::sqrt(2.0 / t);
            double sum = 0.0;
            std::vector<int> idx(n, 0);
            const int K = static_cast<int>(r.nodes.size());
            for (int flat = 0; flat < static_cast<int>(std::pow(K, n)); ++flat) {
                int f = flat;
                double w = 1.0;
                std::vector<double> xi(n);
                for (int k = 0; k < n; ++k) {
                    xi[k] = sc * r.nodes[f % K];
                    w *= r.weights[f % K] * sc;
                    f /= K;
                }
                const double v = vandermonde(xi);
                sum += w * v * v;
            }
            CHECK(std::abs(selberg_value(n, t) - sum) < 1e-10 * sum);
        }
    }

    TEST_CASE("auxiliary Laguerre-type identity") {
        CHECK(std::abs(aux_identity_value(1, 0, 1.0).to_complex() - 1.0) < 1e-14);
        CHECK(std::abs(aux_identity_value(1, 2, 2.0).to_complex() - 0.25) < 1e-14);
        QuadratureSpec s;
        s.dims = {half_line(80.0, 128), half_line(80.0, 128)};
        const cd q = integrate_nd(
                         [](const double* x) {
                             const double d = x[0] - x[1];
                             return cd(x[0] * x[1] * d * d * std::exp(-x[0] - x[1]));
                         },
                         s)
                         .value.to_complex();
        CHECK(std::abs(aux_identity_value(2, 1, 1.0).to_complex() - q) < 1e-8);
        const cd beta(1.5, 0.7);
        const cd q2 = integrate_nd(
                          [&](const double* x) {
                              const double d = x[0] - x[1];
                              return d * d * std::exp(-beta * (x[0] + x[1]));
                          },
                          s)
                          .value.to_complex();
        CHECK(rel(aux_identity_value(2, 0, beta).to_complex(), q2) < 1e-8);
        CHECK_THROWS_AS(aux_identity_value(1, 0, cd(-1.0, 0.5)), std::domain_error);
    }

    TEST_CASE("HCIZ") {
        CHECK(rel(hciz_value({0.7}, {1.3}, cd(0.5, 0.2)), std::exp(cd(0.5, 0.2) * 0.7 * 1.3)) < 1e-14);
        CHECK(rel(hciz_value({0, 1}, {0, 1}, 1.0), std::numbers::e - 1) < 1e-14);
        const auto mc = hciz_haar_mc({0, 1}, {0, 1}, 1.0, 100000, {5, 0});
        CHECK(std::abs(mc.complex() - (std::numbers::e - 1)) < 3 * mc.std_error);
        const cd beta(0.7, 0.4);
        const cd a = hciz_value({-0.3, 0.8, 1.1}, {0.5, 1.7, -0.2}, beta);
        const cd b = hciz_value({0.8, 1.1, -0.3}, {1.7, -0.2, 0.5}, beta);
        CHECK(rel(b, a) < 1e-12);
        const auto mc3 = hciz_haar_mc({-0.3, 0.8, 1.1}, {0.5, 1.7, -0.2}, beta, 100000, {6, 0});
        CHECK(std::abs(mc3.complex() - a) < 3 * mc3.std_error);
        CHECK_THROWS_AS(hciz_value({0.1, 0.1}, {0, 1}, 1.0), DegenerateInputError);
        CHECK_THROWS_AS(hciz_value({0.1, 0.2}, {1, 1}, 1.0), DegenerateInputError);
    }

    TEST_CASE("Cauchy determinant") {
        CHECK(std::abs(cauchy_determinant_value({2.0}, {-0.5}) - 1 / 2.5) < 1e-15);
        Rng rng({8, 0});
        for (int n : {2, 3}) {
            std::vector<double> q1(n), q2(n);
            for (int i = 0; i < n; ++i) {
                q1[i] = n == 2 ? i + 1.0 : rng.uniform() * 2;
                q2[i] = n == 2 ? -(i + 1.0) : -rng.uniform() * 2 - 0.1;
            }
            Eigen::MatrixXd C(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) C(i, j) = 1 / (q1[i] - q2[j]);
            const double d = C.determinant();
            CHECK(std::abs(cauchy_determinant_value(q1, q2) - d) < 1e-10 * std::abs(d));
        }
        CHECK_THROWS_AS(cauchy_determinant_value({1.0, 2.0}, {2.0, -1.0}), DegenerateInputError);
    }

    TEST_CASE("coset integral, n = 1") {
        const SpectralPoint sp(0.2, 0.0, 0.4);
        const int N = 3;
        const cd closed = coset_integral_value(sp, {1.0}, {-1.0}, N).to_complex();
        const cd brute = coset_1d(sp, 1.0, -1.0, N, 8.0);
        CHECK(rel(2 * pi / N * closed, brute) < 1e-3);
        CHECK(std::abs(coset_1d(sp, 1.0, -1.0, N, 16.0) - brute) < 1e-6 * std::abs(brute));
        const SpectralPoint sq(0.1, 0.3, 0.25);
        CHECK(rel(2 * pi / 4 * coset_integral_value(sq, {0.7}, {-1.4}, 4).to_complex(), coset_1d(sq, 0.7, -1.4, 4, 8.0)) <
              1e-3);
        CHECK_THROWS(coset_integral_value(sp, {-1.0}, {-1.0}, N));
    }

    TEST_CASE("coset integral structure") {
        const SpectralPoint sp(0.3, 0.1, 0.2);
        const auto a = coset_integral_value(sp, {1.0, 2.0}, {-1.0, -3.0}, 5);
        const auto b = coset_integral_value(sp, {2.0, 1.0}, {-3.0, -1.0}, 5);
        CHECK(rel_diff(a, b) < 1e-14);
        // omega = 0: log|value| = -n^2 log(2 delta) - sum log|q1 - q2| - N delta (sum q1 - sum q2)
        const std::vector<double> q1{1.0, 2.0}, q2{-1.0, -3.0};
        const int N = 5;
        const double d = 0.2;
        const double l1 = coset_integral_value(SpectralPoint(0.3, 0.0, d), q1, q2, N).log_mag;
        const double l2 = coset_integral_value(SpectralPoint(0.3, 0.0, 2 * d), q1, q2, N).log_mag;
        CHECK(std::abs((l2 - l1) - (-4 * std::log(2.0) - N * d * (3.0 + 4.0))) < 1e-12);
    }

    TEST_CASE("QL spectral decomposition") {
        for (int n : {1, 2, 3}) {
            const SignatureMatrix L{n};
            const auto id = ql_spectral_decomposition(PositiveDefiniteHermitian(Eigen::MatrixXcd::Identity(2 * n, 2 * n)), L);
            for (int j = 0; j < 2 * n; ++j) CHECK(std::abs(id.eigenvalues[j] - (j < n ? -1.0 : 1.0)) < 1e-12);
        }
        for (std::uint64_t k = 0; k < 1000; ++k) {
            const int n = 1 + static_cast<int>(k % 3);
            const auto Q = random_positive_definite(2 * n, {k, 17});
            const SignatureMatrix L{n};
            const auto d = ql_spectral_decomposition(Q, L);
            REQUIRE(d.n_positive == n);
            REQUIRE(d.n_negative == n);
            REQUIRE(d.max_imag < 1e-9);
            REQUIRE(d.residual < 1e-8);
            if (k % 50 == 0) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Q.matrix());
                const Eigen::MatrixXcd S = es.operatorSqrt();
                const auto ev = hermitian_eigenvalues(S * L.matrix() * S);
                for (int j = 0; j < 2 * n; ++j) CHECK(std::abs(ev[j] - d.eigenvalues[j]) < 1e-10);
            }
        }
    }

    TEST_CASE("Hubbard-Stratonovich route for K2, n = 1") {
        const SpectralPoint sp(0.4, 0.1, 0.2);
        CHECK(rel_diff(hs_route_k2_n1(5, sp).value, k2_negative_exact({5, 1, sp, {}}).value) < 1e-6);
        const cd v = hs_route_k2_n1(6, SpectralPoint(0.2, 0.0, 0.3)).complex();
        CHECK(v.real() > 0);
        CHECK(std::abs(v.imag()) < 1e-8 * std::abs(v));
        const SpectralPoint sp5(0.0, 5.0, 0.5);
        CHECK(rel_diff(hs_route_k2_n1(6, sp5).value, k2_negative_exact({6, 1, sp5, {}}).value) < 1e-6);
        // decoupling into the K1 product sets in like 1/omega^2
        const SpectralPoint far(0.0, 20.0, 1.0);
        const cd k1a = k1_negative_exact({6, 1, far, {}}).complex();
        const cd k1b = std::conj(k1_negative_exact({6, 1, SpectralPoint(0.0, -20.0, 1.0), {}}).complex());
        CHECK(rel(hs_route_k2_n1(6, far).complex(), k1a * k1b) < 0.05);
        CHECK_THROWS_AS(hs_route_k2_n1(1, sp), std::invalid_argument);
    }
}
