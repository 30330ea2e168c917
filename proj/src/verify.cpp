#include "charpoly/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "charpoly/asymptotics.hpp"
#include "charpoly/ensembles.hpp"
#include "charpoly/exact_moments.hpp"
#include "charpoly/matrix_integrals.hpp"
#include "charpoly/montecarlo.hpp"
#include "charpoly/quadrature.hpp"
#include "charpoly/rng.hpp"
#include "charpoly/specfun.hpp"

namespace charpoly {

namespace {

using cd = std::complex<double>;
using Clock = std::chrono::steady_clock;
constexpr cd I{0.0, 1.0};

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

class Suite {
public:
    Suite(VerificationReport& r, Exec exec) : r_(r), exec_(exec) {}

    Exec exec() const { return exec_; }
    std::uint64_t seed() const { return r_.seed; }

    // body fills expected/got/metric/tolerance and may clear c.pass.
    void check(const std::string& id, int criterion, const std::string& params,
               const std::function<void(CheckRecord&)>& body) {
        CheckRecord c;
        c.id = id;
        c.criterion = criterion;
        c.params = params;
        const auto t0 = Clock::now();
        try {
            c.pass = true;
            body(c);
            c.pass = c.pass && std::isfinite(c.metric) && c.metric <= c.tolerance;
        } catch (const std::exception& e) {
            c.pass = false;
            c.metric = std::numeric_limits<double>::infinity();
            c.note = std::string("exception: ") + e.what();
        }
        c.runtime_ms = ms_since(t0);
        r_.pass = r_.pass && c.pass;
        r_.records.push_back(std::move(c));
    }

    // Agreement within 3 standard errors. One failing seed triggers three
    // further seeds; the check then fails only if two or more of them fail.
    void mc_check(const std::string& id, int criterion, const std::string& params, cd expected,
                  const std::function<MomentEstimate(RngSeed)>& run) {
        check(id, criterion, params, [&](CheckRecord& c) {
            auto z = [&](const MomentEstimate& m) {
                const double d = std::abs(m.complex() - expected);
                if (m.std_error == 0.0) return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
                return d / m.std_error;
            };
            const MomentEstimate m = run(RngSeed{seed(), 0});
            c.expected = expected;
            c.got = m.complex();
            c.metric = z(m);
            c.tolerance = 3.0;
            if (c.metric <= c.tolerance) return;
            int fails = 0;
            for (std::uint64_t k = 1; k <= 3; ++k)
                if (!(z(run(derive_seed(RngSeed{seed(), 0}, 1000 + k))) <= 3.0)) ++fails;
            c.note = "rerun with 3 seeds: " + std::to_string(fails) + " failed";
            c.metric = fails >= 2 ? c.metric : 0.0;
        });
    }

private:
    VerificationReport& r_;
    Exec exec_;
};

McConfig mc(std::uint64_t samples, RngSeed s, Exec exec) {
    McConfig c;
    c.n_samples = samples;
    c.seed = s;
    c.exec = exec;
    return c;
}

// ---------------------------------------------------------------- identities

// Brute-force first-type Ingham-Siegel integral for n = 2: eigenvalues f1, f2
// on the half-line and the U(2) coset vector v = (cos t, e^{i phi} sin t)
// with normalized measure sin(2t) dt dphi / (2 pi); G_2 = pi.
cd ingham_siegel_first_bruteforce(int p, const Eigen::MatrixXcd& Q, double lambda_min) {
    const double R = 80.0 / lambda_min;
    QuadratureSpec spec;
    DimSpec f;
    f.a = 0.0;
    f.b = R;
    f.nodes = 48;
    DimSpec th;
    th.a = 0.0;
    th.b = M_PI / 2;
    th.nodes = 16;
    DimSpec ph;
    ph.a = 0.0;
    ph.b = 2 * M_PI;
    ph.nodes = 16;
    spec.dims = {f, f, th, ph};
    spec.tolerance = 1e-7;
    spec.max_doublings = 1;
    const QuadratureResult r = integrate_nd(
        [&](const double* x) -> cd {
            const double f1 = x[0], f2 = x[1], t = x[2], phi = x[3];
            Eigen::Vector2cd v(std::cos(t), std::polar(std::sin(t), phi));
            Eigen::Vector2cd w(-std::polar(std::sin(t), -phi), std::cos(t));
            const double a = (v.adjoint() * Q * v)(0).real(), b = (w.adjoint() * Q * w)(0).real();
            const double jac = std::sin(2 * t) / (2 * M_PI);
            return M_PI * jac * std::pow(f1 * f2, p) * (f1 - f2) * (f1 - f2) * std::exp(-a * f1 - b * f2);
        },
        spec);
    return r.value.to_complex();
}

// int_{-R}^{R} df e^{i f q / 2} (f - mu)^{-N}, R = 1000, on three panels so
// the region near the pole is resolved.
cd ingham_siegel_second_quadrature(int N, cd mu, double q) {
    cd sum = 0.0;
    for (auto [a, b] : {std::pair{-1000.0, -20.0}, {-20.0, 20.0}, {20.0, 1000.0}}) {
        QuadratureSpec spec;
        DimSpec d;
        d.a = a;
        d.b = b;
        d.nodes = std::max(400, oscillation_nodes(q / 2, b - a));
        spec.dims = {d};
        spec.max_doublings = 2;
        spec.tolerance = 1e-9;
        sum += integrate_nd([&](const double* x) { return std::exp(0.5 * I * x[0] * q) * std::pow(x[0] - mu, -N); },
                            spec)
                   .value.to_complex();
    }
    return sum;
}

double selberg_gauss_hermite(int n, double t) {
    const Rule g = gauss_hermite_rule(12);
    const int k = static_cast<int>(g.nodes.size());
    double sum = 0.0;
    std::vector<int> idx(n, 0);
    std::vector<double> x(n);
    while (true) {
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            x[i] = g.nodes[idx[i]];
            w *= g.weights[idx[i]];
        }
        const double v = vandermonde(x);
        sum += w * v * v;
        int d = 0;
        while (d < n && ++idx[d] == k) idx[d++] = 0;
        if (d == n) break;
    }
    // xi = x sqrt(2/t)
    return std::pow(2.0 / t, 0.5 * n + 0.5 * n * (n - 1)) * sum;
}

cd aux_quadrature(int n, int p, cd beta) {
    QuadratureSpec spec;
    DimSpec d;
    d.a = 0.0;
    d.b = 80.0 / beta.real();
    d.nodes = 96;
    for (int i = 0; i < n; ++i) spec.dims.push_back(d);
    spec.tolerance = 1e-11;
    return integrate_nd(
               [&](const double* q) {
                   cd v = 1.0;
                   for (int i = 0; i < n; ++i) v *= std::pow(q[i], p) * std::exp(-beta * q[i]);
                   if (n == 2) v *= (q[0] - q[1]) * (q[0] - q[1]);
                   return v;
               },
               spec)
        .value.to_complex();
}

// Coset integral at n = 1 over (psi, phi) with measure sinh(2 psi) dpsi dphi.
cd coset_bruteforce(const SpectralPoint& sp, double q1, double q2, int N, double psi_max) {
    const cd m1 = sp.mu1(), m2 = sp.mu2_conj();
    QuadratureSpec spec;
    DimSpec a;
    a.a = 0.0;
    a.b = psi_max;
    a.nodes = 200;
    DimSpec b;
    b.a = 0.0;
    b.b = 2 * M_PI;
    b.nodes = 16;
    spec.dims = {a, b};
    return integrate_nd(
               [&](const double* x) {
                   const double ch = std::cosh(x[0]), sh = std::sinh(x[0]);
                   const cd tr = q1 * (m1 * ch * ch - m2 * sh * sh) + q2 * (m2 * ch * ch - m1 * sh * sh);
                   return std::sinh(2 * x[0]) * std::exp(I * static_cast<double>(N) * tr);
               },
               spec)
        .value.to_complex();
}

void suite_identities(Suite& s) {
    {
        const SpectralPoint sp(0.4, 0.1, 0.2);
        s.check("hs_route_vs_k2", 7, "N=5 mu=0.4 omega=0.1 delta=0.2", [&](CheckRecord& c) {
            QuadOptions q;
            q.exec = s.exec();
            c.got = hs_route_k2_n1(5, sp, q).complex();
            c.expected = k2_negative_exact({5, 1, sp, q}).complex();
            c.metric = rel(c.got, c.expected);
            c.tolerance = 1e-6;
        });
    }
    {
        const PositiveDefiniteHermitian Q = random_positive_definite(2, RngSeed{s.seed(), 11}, 0.5);
        s.check("ingham_siegel_first_n2", 8, "n=2 p=1 random Q (eps=0.5)", [&](CheckRecord& c) {
            c.got = ingham_siegel_first_value(1, Q).to_complex();
            c.expected = ingham_siegel_first_bruteforce(1, Q.matrix(), Q.eigenvalues().front());
            c.metric = rel(c.got, c.expected);
            c.tolerance = 1e-4;
        });
    }
    {
        const cd mu(0.2, 0.5);
        s.check("ingham_siegel_second_n1", 8, "N=3 q=1 mu=0.2+0.5i", [&](CheckRecord& c) {
            Eigen::MatrixXcd Q(1, 1);
            Q(0, 0) = 1.0;
            c.got = ingham_siegel_second_value(3, mu, Q).to_complex();
            c.expected = ingham_siegel_second_quadrature(3, mu, 1.0);
            c.metric = rel(c.got, c.expected);
            c.tolerance = 1e-4;
        });
        s.check("ingham_siegel_second_realsym_n1", 8, "N=3 q=2 mu=0.2+0.5i", [&](CheckRecord& c) {
            Eigen::MatrixXd Q(1, 1);
            Q(0, 0) = 2.0;
            c.got = ingham_siegel_second_realsym_value(3, mu, Q).to_complex();
            c.expected = ingham_siegel_second_quadrature(3, mu, 2.0);
            c.metric = rel(c.got, c.expected);
            c.tolerance = 1e-4;
        });
        s.check("ingham_siegel_second_negative_zero", 8, "N=3 Q=diag(1,-0.5)", [&](CheckRecord& c) {
            Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(2, 2);
            Q(0, 0) = 1.0;
            Q(1, 1) = -0.5;
            const bool h = ingham_siegel_second_value(3, mu, Q).is_zero();
            const bool r = ingham_siegel_second_realsym_value(3, mu, Q.real()).is_zero();
            c.metric = h && r ? 0.0 : 1.0;
        });
    }
    for (auto [n, t] : {std::pair{1, 1.0}, {2, 1.0}, {3, 2.0}}) {
        s.check("selberg", 8, "n=" + std::to_string(n) + fmt(" t=%g", t), [&, n = n, t = t](CheckRecord& c) {
            c.got = selberg_value(n, t);
            c.expected = selberg_gauss_hermite(n, t);
            c.metric = rel(c.got, c.expected);
            c.tolerance = 1e-10;
        });
    }
    for (auto [n, p, beta] : {std::tuple{1, 0, cd(1.0)}, {1, 2, cd(2.0)}, {2, 1, cd(1.0)}, {2, 0, cd(1.5, 0.5)}}) {
        std::ostringstream ps;
        ps << "n=" << n << " p=" << p << " beta=" << beta.real() << "+" << beta.imag() << "i";
        s.check("aux_identity", 8, ps.str(), [&, n = n, p = p, beta = beta](CheckRecord& c) {
            c.got = aux_identity_value(n, p, beta).to_complex();
            c.expected = aux_quadrature(n, p, beta);
            c.metric = rel(c.got, c.expected);
            c.tolerance = 1e-8;
        });
    }
    {
        const std::vector<double> lam{0.0, 1.0}, q{0.0, 1.0};
        s.mc_check("hciz_n2_haar", 8, "lambda=(0,1) q=(0,1) beta=1 samples=1e5", hciz_value(lam, q, 1.0),
                   [&](RngSeed sd) { return hciz_haar_mc(lam, q, 1.0, 100000, sd); });
        const std::vector<double> lam2{-0.3, 0.8}, q2{0.5, 1.7};
        const cd beta(0.7, 0.4);
        s.mc_check("hciz_n2_haar", 8, "lambda=(-0.3,0.8) q=(0.5,1.7) beta=0.7+0.4i samples=1e5",
                   hciz_value(lam2, q2, beta), [&](RngSeed sd) { return hciz_haar_mc(lam2, q2, beta, 100000, sd); });
    }
    for (int n = 1; n <= 3; ++n) {
        s.check("cauchy_determinant", 8, "n=" + std::to_string(n), [&, n](CheckRecord& c) {
            Rng rng(RngSeed{s.seed(), static_cast<std::uint64_t>(20 + n)});
            std::vector<double> a(n), b(n);
            for (int i = 0; i < n; ++i) {
                a[i] = 0.5 + 2.0 * rng.uniform() + i;
                b[i] = -0.5 - 2.0 * rng.uniform() - i;
            }
            Eigen::MatrixXd M(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) M(i, j) = 1.0 / (a[i] - b[j]);
            c.got = cauchy_determinant_value(a, b);
            c.expected = M.determinant();
            c.metric = rel(c.got, c.expected);
            c.tolerance = 1e-10;
        });
    }
    {
        const SpectralPoint sp(0.2, 0.0, 0.4);  // mu1 = 0.2 + 0.4i
        s.check("coset_n1", 8, "N=3 q1=1 q2=-1 mu1=0.2+0.4i", [&](CheckRecord& c) {
            c.got = coset_integral_value(sp, {1.0}, {-1.0}, 3).to_complex() * (2 * M_PI / 3);
            c.expected = coset_bruteforce(sp, 1.0, -1.0, 3, 8.0);
            c.metric = rel(c.got, c.expected);
            c.tolerance = 1e-3;
        });
    }
    for (int n = 1; n <= 3; ++n) {
        s.check("ql_signature", 9, "n=" + std::to_string(n) + " 1000 random Q", [&, n](CheckRecord& c) {
            double worst_imag = 0.0, worst_res = 0.0;
            int bad_sig = 0;
            for (std::uint64_t k = 0; k < 1000; ++k) {
                const auto Q = random_positive_definite(2 * n, derive_seed(RngSeed{s.seed(), 30}, k + 1000 * n));
                const QlDecomposition d = ql_spectral_decomposition(Q, SignatureMatrix{n});
                worst_imag = std::max(worst_imag, d.max_imag);
                worst_res = std::max(worst_res, d.residual);
                if (d.n_positive != n || d.n_negative != n) ++bad_sig;
            }
            c.got = cd(worst_imag, worst_res);
            c.note = "got = (max |Im q|, max residual); signature failures " + std::to_string(bad_sig);
            c.metric = (worst_imag <= 1e-9 && worst_res < 1e-8 && bad_sig == 0) ? 0.0 : 1.0;
        });
    }
}

// ------------------------------------------------------------------- moments

void suite_moments(Suite& s) {
    {
        const int N = 50, S = 10000;
        std::vector<cd> tr(S);
        std::vector<double> ev;
        ev.reserve(static_cast<size_t>(N) * S);
        for (int k = 0; k < S; ++k) {
            const HermitianMatrix H = sample_gue(N, derive_seed(RngSeed{s.seed(), 1}, k));
            tr[k] = H.cwiseAbs2().sum();
            const auto e = hermitian_eigenvalues(H);
            ev.insert(ev.end(), e.begin(), e.end());
        }
        s.check("gue_trace_mean", 1, "N=50 samples=1e4", [&](CheckRecord& c) {
            const MomentEstimate m = aggregate(tr, Estimator::plain_mean);
            c.expected = N;
            c.got = m.complex();
            c.metric = std::abs(c.got - c.expected) / m.std_error;
            c.tolerance = 3.0;
        });
        s.check("gue_semicircle_ks", 1, "N=50 samples=1e4", [&](CheckRecord& c) {
            std::sort(ev.begin(), ev.end());
            const double M = static_cast<double>(ev.size());
            double ks = 0.0;
            for (size_t i = 0; i < ev.size(); ++i) {
                const double F = semicircle_cdf(ev[i]);
                ks = std::max({ks, std::abs(F - i / M), std::abs(F - (i + 1) / M)});
            }
            c.got = ks;
            c.metric = ks;
            c.tolerance = 0.05;
        });
    }
    for (int n : {1, 2}) {
        const SpectralPoint sp(0.3, 0.0, 0.3);
        QuadOptions q;
        q.exec = s.exec();
        const cd ex = k1_negative_exact({4, n, sp, q}).complex();
        s.mc_check("mc_vs_exact_k1", 2, "N=4 n=" + std::to_string(n) + " mu1=0.3+0.3i samples=1e6", ex,
                   [&](RngSeed sd) { return mc_k1(4, n, sp, mc(1000000, sd, s.exec())); });
    }
    s.check("large_mu_normalization", 3, "N=4 n=2 mu=50 delta=0.1", [&](CheckRecord& c) {
        const SpectralPoint sp(50.0, 0.0, 0.1);
        QuadOptions q;
        q.exec = s.exec();
        c.got = k1_negative_exact({4, 2, sp, q}).complex();
        c.expected = std::pow(sp.mu1(), -8);
        c.metric = rel(c.got, c.expected);
        c.tolerance = 0.01;
    });
    for (int N : {4, 8})
        for (int n = 1; n <= 3; ++n) {
            const SpectralPoint sp(0.3, 0.0, 0.3);
            QuadOptions q;
            q.exec = s.exec();
            const MomentParams p{N, n, sp, q};
            const std::string ps = "N=" + std::to_string(N) + " n=" + std::to_string(n) + " mu1=0.3+0.3i";
            const MomentEstimate det = k1_negative_determinant(p);
            s.check("determinant_vs_eigenvalue_integral", 4, ps, [&](CheckRecord& c) {
                c.got = det.complex();
                c.expected = k1_negative_exact(p).complex();
                c.metric = rel(c.got, c.expected);
                c.tolerance = 1e-8;
            });
            s.check("monic_family_invariance", 4, ps, [&](CheckRecord& c) {
                c.got = k1_negative_determinant(p, MonicFamily::shifted).complex();
                c.expected = det.complex();
                c.metric = rel(c.got, c.expected);
                c.tolerance = 1e-10;
            });
        }
}

// --------------------------------------------------------------- asymptotics

void suite_asymptotics(Suite& s) {
    auto mag_err = [&](int N) {
        const SpectralPoint sp(0.0, 0.0, 1.0 / N);
        QuadOptions q;
        q.exec = s.exec();
        const double ex = std::exp(k1_negative_exact({N, 1, sp, q}).value.log_mag);
        const double as = std::exp(k1_asymptotic(N, 1, sp).value.log_mag);
        return std::abs(as - ex) / ex;
    };
    const double e25 = mag_err(25), e100 = mag_err(100);
    s.check("k1_asymptotic_magnitude", 5, "N=100 n=1 mu=0 delta=1/N", [&](CheckRecord& c) {
        c.got = e100;
        c.metric = e100;
        c.tolerance = 0.05;
    });
    s.check("k1_asymptotic_convergence", 5, "error(N=100) < error(N=25)/2", [&](CheckRecord& c) {
        c.expected = e25 / 2;
        c.got = e100;
        c.metric = e100 / (e25 / 2);
        c.tolerance = 1.0;
        c.pass = e100 < e25 / 2;
    });
    s.check("universal_ratio", 6, "N=200 n=1 mu=0 omega=0 delta=1/N", [&](CheckRecord& c) {
        const int N = 200;
        const SpectralPoint sp(0.0, 0.0, 1.0 / N);
        const SpectralPoint sp2(sp.mu(), -sp.omega(), sp.delta());
        QuadOptions q;
        q.exec = s.exec();
        const cd k2 = k2_negative_exact({N, 1, sp, q}).complex();
        const cd k1 = k1_negative_exact({N, 1, sp, q}).complex();
        // K1(mu2*) = conj K1(mu2) with mu2 = mu - omega/2 + i delta.
        const cd k1b = std::conj(k1_negative_exact({N, 1, sp2, q}).complex());
        c.got = k2 / (k1 * k1b);
        c.expected = moment_ratio_limit(1, 0.0, 0.0, 1.0 / N);
        c.metric = rel(c.got, c.expected);
        c.tolerance = 0.10;
    });
}

// -------------------------------------------------------------------- chiral

void suite_chiral(Suite& s) {
    {
        QuadOptions q;
        q.exec = s.exec();
        const cd ex = chiral_negative_exact(8, 1, 0.5, q).complex();
        s.mc_check("chiral_mc_vs_exact", 10, "N=8 n=1 m=0.5 samples=1e5", ex,
                   [&](RngSeed sd) { return mc_chiral_moment(8, 1, 0.5, mc(100000, sd, s.exec())); });
    }
    for (double x : {0.5, 1.0, 2.0}) {
        s.check("chiral_limit_bessel", 10, fmt("n=1 x=%g", x), [&](CheckRecord& c) {
            QuadOptions q;
            q.exec = s.exec();
            c.got = chiral_limit_moment(1, x, q).complex();
            c.expected = 2.0 * specfun::bessel_k(0, x);
            c.metric = rel(c.got, c.expected);
            c.tolerance = 1e-8;
        });
    }
    {
        const int N = 300;
        const double xr_f = 1.0, xr_b = 0.8;
        QuadOptions q;
        q.exec = s.exec();
        const double ref_exact = chiral_generating_exact(N, xr_f / N, xr_b / N, q).complex().real();
        const double ref_bessel = chiral_quenched_bessel(xr_f, xr_b);
        for (auto [xf, xb] : {std::pair{0.5, 0.8}, {2.0, 0.8}, {1.0, 2.0}, {1.0, 0.4}}) {
            s.check("quenched_bessel_vs_quadrature", 10,
                    fmt("N=300 x_f=%g", xf) + fmt(" x_b=%g", xb) + " normalized at (1, 0.8)",
                    [&, xf = xf, xb = xb](CheckRecord& c) {
                        c.got = chiral_generating_exact(N, xf / N, xb / N, q).complex().real() / ref_exact;
                        c.expected = chiral_quenched_bessel(xf, xb) / ref_bessel;
                        c.metric = rel(c.got, c.expected);
                        c.tolerance = 0.05;
                    });
        }
    }
}

// ---------------------------------------------------------------- generating

void suite_generating(Suite& s) {
    {
        const GeneratingPoint t{cd(0.3, 0.25), cd(-0.1, -0.25), cd(0.3, 0.25), cd(-0.1, -0.25)};
        s.check("generating_trivial_mc", 11, "N=4 mu_f = mu_b samples=1e4", [&](CheckRecord& c) {
            const MomentEstimate m = mc_generating_function(4, t, mc(10000, RngSeed{s.seed(), 0}, s.exec()));
            c.expected = 1.0;
            c.got = m.complex();
            c.metric = std::abs(c.got - c.expected) + m.std_error;
            c.tolerance = 0.0;
        });
        s.check("generating_trivial_exact", 11, "N=4 mu_f = mu_b", [&](CheckRecord& c) {
            QuadOptions q;
            q.exec = s.exec();
            c.expected = 1.0;
            c.got = generating_exact(4, t, q).complex();
            c.metric = std::abs(c.got - c.expected);
            c.tolerance = 1e-8;
        });
    }
    {
        const GeneratingPoint g{cd(0.1, 0.3), cd(-0.2, -0.3), cd(0.5, 0.0), cd(-0.4, 0.0)};
        QuadOptions q;
        q.exec = s.exec();
        const cd ex = generating_exact(4, g, q).complex();
        s.mc_check("generating_mc_vs_exact", 11, "N=4 b=(0.1+0.3i, -0.2-0.3i) f=(0.5, -0.4) samples=1e5", ex,
                   [&](RngSeed sd) { return mc_generating_function(4, g, mc(100000, sd, s.exec())); });
    }
    {
        const int N = 64;
        const double u = 2 * M_PI / N, d = 0.5 / N;
        QuadOptions q;
        q.exec = s.exec();
        const cd ex0 = generating_exact(N, GeneratingPoint::local(0.0, 0.6 * u, 0.3 * u, d), q).complex();
        const cd as0 = generating_asymptotic(N, 0.0, 0.6 * u, 0.3 * u, d);
        for (auto [b, f] : {std::pair{0.3, 0.3}, {0.5, 0.2}, {0.2, 0.7}, {1.0, 0.4}}) {
            s.check("generating_asymptotic_vs_exact", 11,
                    fmt("N=64 mu=0 omega_b=%g", b) + fmt("*2pi/N omega_f=%g", f) +
                        "*2pi/N delta=0.5/N normalized at (0.6, 0.3)",
                    [&, b = b, f = f](CheckRecord& c) {
                        c.got = generating_exact(N, GeneratingPoint::local(0.0, b * u, f * u, d), q).complex() / ex0;
                        c.expected = generating_asymptotic(N, 0.0, b * u, f * u, d) / as0;
                        c.metric = rel(c.got, c.expected);
                        c.tolerance = 0.10;
                    });
        }
    }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"identities", "moments", "asymptotics", "chiral", "generating", "all"};
    return names;
}

VerificationReport run_suite(const std::string& name, std::uint64_t seed, Exec exec) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw std::invalid_argument("unknown suite: " + name);
    VerificationReport r;
    r.suite = name;
    r.seed = seed;
    Suite s(r, exec);
    const bool all = name == "all";
    if (all || name == "identities") suite_identities(s);
    if (all || name == "moments") suite_moments(s);
    if (all || name == "asymptotics") suite_asymptotics(s);
    if (all || name == "chiral") suite_chiral(s);
    if (all || name == "generating") suite_generating(s);
    return r;
}

std::string report_to_json(const VerificationReport& r, bool with_runtime) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["suite"] = r.suite;
    j["pass"] = r.pass;
    j["tool_version"] = r.tool_version;
    j["seed"] = r.seed;
    j["records"] = ordered_json::array();
    for (const auto& c : r.records) {
        ordered_json e;
        e["id"] = c.id;
        e["criterion"] = c.criterion;
        e["params"] = c.params;
        e["expected"] = {{"re", c.expected.real()}, {"im", c.expected.imag()}};
        e["got"] = {{"re", c.got.real()}, {"im", c.got.imag()}};
        e["metric"] = std::isfinite(c.metric) ? ordered_json(c.metric) : ordered_json("inf");
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        if (with_runtime) e["runtime_ms"] = c.runtime_ms;
        if (!c.note.empty()) e["note"] = c.note;
        j["records"].push_back(e);
    }
    return j.dump(2);
}

}  // namespace charpoly
