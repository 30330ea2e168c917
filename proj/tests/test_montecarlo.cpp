#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "charpoly/montecarlo.hpp"
#include "charpoly/rng.hpp"
#include "oracles.hpp"

using namespace charpoly;
using cd = std::complex<double>;

namespace {

McConfig cfg(std::uint64_t samples, std::uint64_t seed) {
    McConfig c;
    c.n_samples = samples;
    c.seed = {seed, 0};
    return c;
}

McConfig point_mass() {
    McConfig c = cfg(1000, 1);
    c.point_mass = true;
    return c;
}

double z_score(const MomentEstimate& e, cd expected) { return std::abs(e.complex() - expected) / e.std_error; }

}  // namespace

TEST_SUITE("montecarlo") {
    TEST_CASE("aggregate: constant and alternating streams") {
        const std::vector<cd> c(1000, cd(2.5, -1.0));
        for (auto est : {Estimator::plain_mean, Estimator::median_of_means}) {
            const auto e = aggregate(c, est);
            CHECK(std::abs(e.complex() - cd(2.5, -1.0)) < 1e-14);
            CHECK(e.std_error < 1e-14);
        }
        std::vector<cd> alt(10000);
        for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 ? -1.0 : 1.0;
        const auto e = aggregate(alt, Estimator::plain_mean);
        CHECK(std::abs(e.complex()) < 1e-15);
        CHECK(e.std_error == doctest::Approx(1 / std::sqrt(10000.0)).epsilon(1e-3));
        CHECK_THROWS_AS(aggregate({}, Estimator::plain_mean), std::invalid_argument);
    }

    TEST_CASE("aggregate: Pareto tail index 1.5") {
        // mean of a Pareto(x_m = 1, alpha = 1.5) variate is alpha / (alpha - 1) = 3
        Rng rng({77, 0});
        auto stream = [&](std::size_t S) {
            std::vector<cd> v(S);
            for (auto& x : v) x = std::pow(rng.uniform(), -1.0 / 1.5);
            return v;
        };
        double mom_dev = 0.0;
        for (int r = 0; r < 50; ++r) {
            const auto v = stream(102400);
            mom_dev = std::max(mom_dev, std::abs(aggregate(v, Estimator::median_of_means, 32).complex().real() / 3 - 1));
        }
        CHECK(mom_dev < 0.10);
        // The plain mean is dominated by rare huge draws: over many short streams
        // it strays by more than 50%, which median-of-means never does.
        double plain_dev = 0.0, mom_small = 0.0;
        for (int r = 0; r < 2000; ++r) {
            const auto v = stream(1024);
            plain_dev = std::max(plain_dev, std::abs(aggregate(v, Estimator::plain_mean).complex().real() / 3 - 1));
            mom_small = std::max(mom_small, std::abs(aggregate(v, Estimator::median_of_means, 32).complex().real() / 3 - 1));
        }
        CHECK(plain_dev > 0.5);
        CHECK(mom_small < 0.5);
    }

    TEST_CASE("point-mass hooks") {
        const SpectralPoint sp(0.3, 0.2, 0.4);
        const int N = 5, n = 2;
        CHECK(rel_diff(mc_k1(N, n, sp, point_mass()).value, LogComplex::from_complex(sp.mu1()).pow(-n * N)) < 1e-12);
        CHECK(rel_diff(mc_k2(N, n, sp, point_mass()).value,
                       LogComplex::from_complex(sp.mu1() * sp.mu2_conj()).pow(-n * N)) < 1e-12);
        CHECK(rel_diff(mc_positive_moment(N, n, sp, point_mass()).value, LogComplex::from_complex(sp.mu1()).pow(n * N)) <
              1e-12);
        CHECK(rel_diff(mc_positive_pair(N, 1, sp, point_mass()).value,
                       LogComplex::from_complex(sp.mu1() * sp.mu2_conj()).pow(N)) < 1e-12);
        const GeneratingPoint g{cd(0.1, 0.3), cd(-0.2, -0.3), cd(0.5, 0), cd(-0.4, 0)};
        const cd gen = std::pow(g.mu1f * g.mu2f, N) / std::pow(g.mu1b * g.mu2b_conj, N);
        CHECK(std::abs(mc_generating_function(N, g, point_mass()).complex() - gen) < 1e-12 * std::abs(gen));
        const auto ch = mc_chiral_moment(N, n, 0.7, point_mass());
        CHECK(std::abs(ch.complex().real() - std::pow(0.7, -2 * n * N)) < 1e-12 * std::pow(0.7, -2 * n * N));
        const auto cg = mc_chiral_generating(N, 0.6, 0.9, point_mass());
        CHECK(std::abs(cg.complex().real() - std::pow(0.6 / 0.9, 2 * N)) < 1e-12);
    }

    TEST_CASE("generating function at coinciding arguments is exactly 1") {
        const GeneratingPoint g{cd(0.1, 0.3), cd(-0.2, -0.3), cd(0.1, 0.3), cd(-0.2, -0.3)};
        const auto e = mc_generating_function(4, g, cfg(2000, 3));
        CHECK(std::abs(e.complex() - 1.0) < 1e-14);
        CHECK(e.std_error < 1e-14);
        const GeneratingPoint bad{cd(0.1, -0.3), cd(-0.2, -0.3), cd(0.1, 0), cd(0.2, 0)};
        CHECK_THROWS_AS(mc_generating_function(4, bad, cfg(2000, 3)), std::invalid_argument);
    }

    TEST_CASE("preconditions") {
        const SpectralPoint sp(0.0, 0.0, 0.5);
        CHECK_THROWS_AS(SpectralPoint(0.0, 0.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(mc_k1(0, 1, sp, cfg(1000, 1)), std::invalid_argument);
        CHECK_THROWS_AS(mc_k1(4, 1, sp, cfg(50, 1)), std::invalid_argument);
        CHECK_THROWS_AS(mc_chiral_moment(4, 1, 0.0, cfg(1000, 1)), std::invalid_argument);
        CHECK_FALSE(mc_k1(4, 1, SpectralPoint(0.0, 0.0, 0.05), cfg(1000, 1)).warnings.empty());
        CHECK(mc_k1(4, 1, SpectralPoint(0.0, 0.0, 0.5), cfg(1000, 1)).warnings.empty());
    }

    TEST_CASE("serial and parallel runs are bit-identical") {
        const SpectralPoint sp(0.3, 0.1, 0.3);
        McConfig a = cfg(20000, 9), b = a;
        a.exec = Exec::serial;
        b.exec = Exec::parallel;
        const auto x = mc_k2(4, 1, sp, a), y = mc_k2(4, 1, sp, b);
        CHECK(x.value.log_mag == y.value.log_mag);
        CHECK(x.value.phase == y.value.phase);
        CHECK(x.std_error == y.std_error);
        const auto z = mc_k2(4, 1, sp, a);
        CHECK(z.value.log_mag == x.value.log_mag);
    }

    TEST_CASE("K1 against the Heine oracle") {
        const SpectralPoint sp(0.3, 0.0, 0.3);
        const cd mu1 = sp.mu1();
        const cd exact = oracle::gue_average(4, [&](double x) { return 1.0 / (mu1 - x); });
        CHECK(z_score(mc_k1(4, 1, sp, cfg(200000, 21)), exact) < 3);
        const cd exact2 = oracle::gue_average(4, [&](double x) { return 1.0 / ((mu1 - x) * (mu1 - x)); });
        CHECK(z_score(mc_k1(4, 2, sp, cfg(200000, 22)), exact2) < 3);
    }

    TEST_CASE("K1 tends to mu1^{-nN} at large mu") {
        const SpectralPoint sp(50.0, 0.0, 0.1);
        const auto e = mc_k1(4, 2, sp, cfg(10000, 23));
        CHECK(rel_diff(e.value, LogComplex::from_complex(sp.mu1()).pow(-8)) < 0.01);
    }

    TEST_CASE("K2 against the Heine oracle and positivity at omega = 0") {
        const SpectralPoint sp(0.2, 0.1, 0.3);
        const cd exact = oracle::gue_average(4, [&](double x) { return 1.0 / ((sp.mu1() - x) * (sp.mu2_conj() - x)); });
        CHECK(z_score(mc_k2(4, 1, sp, cfg(200000, 24)), exact) < 3);
        const auto e0 = mc_k2(4, 1, SpectralPoint(0.2, 0.0, 0.3), cfg(50000, 25));
        CHECK(std::abs(e0.complex().imag()) < 3 * e0.std_error);
        CHECK(e0.complex().real() > 0);
    }

    TEST_CASE("positive moments") {
        const auto e1 = mc_positive_moment(1, 1, SpectralPoint::unregularized(0.0, 0.0, 0.0), cfg(100000, 26));
        CHECK(std::abs(e1.complex()) < 3 * e1.std_error);
        const auto sp = SpectralPoint::unregularized(0.5, 0.0, 0.0);
        const cd exact = oracle::gue_average(4, [](double x) { return cd(0.5 - x); });
        CHECK(z_score(mc_positive_moment(4, 1, sp, cfg(200000, 27)), exact) < 3);
    }

    TEST_CASE("generating function against the Heine oracle") {
        const auto g = GeneratingPoint::local(0.0, 0.2, 0.2, 0.3);
        const cd exact = oracle::gue_average(
            4, [&](double x) { return (g.mu1f - x) * (g.mu2f - x) / ((g.mu1b - x) * (g.mu2b_conj - x)); });
        CHECK(z_score(mc_generating_function(4, g, cfg(200000, 28)), exact) < 3);
    }

    TEST_CASE("chiral moment against the Laguerre oracle") {
        const double m = 0.5;
        const cd exact = oracle::laguerre_average(8, [m](double s) { return cd(1.0 / (m * m + s)); });
        const auto e = mc_chiral_moment(8, 1, m, cfg(100000, 29));
        CHECK(e.complex().imag() == 0.0);
        CHECK(z_score(e, exact) < 3);
        const cd gen = oracle::laguerre_average(8, [](double s) { return cd((0.36 + s) / (0.16 + s)); });
        CHECK(z_score(mc_chiral_generating(8, 0.6, 0.4, cfg(100000, 30)), gen) < 3);
    }

    TEST_CASE("reflection symmetry at purely imaginary mu1") {
        // conj(K1(i delta)) = (-1)^{nN} K1(i delta); N = 3, n = 1 makes it purely imaginary
        const auto e = mc_k1(3, 1, SpectralPoint(0.0, 0.0, 0.5), cfg(100000, 31));
        CHECK(std::abs(std::conj(e.complex()) + e.complex()) < 3 * 2 * e.std_error);
        const auto f = mc_k1(4, 1, SpectralPoint(0.0, 0.0, 0.5), cfg(100000, 32));
        CHECK(std::abs(std::conj(f.complex()) - f.complex()) < 3 * 2 * f.std_error);
    }

    TEST_CASE("doubling the samples shrinks the standard error by sqrt 2") {
        const SpectralPoint sp(0.3, 0.0, 0.5);
        double r = 0.0;
        for (std::uint64_t k = 0; k < 10; ++k) {
            McConfig a = cfg(4000, 100 + k), b = cfg(8000, 200 + k);
            a.estimator = b.estimator = Estimator::plain_mean;
            r += mc_k1(4, 1, sp, a).std_error / mc_k1(4, 1, sp, b).std_error;
        }
        r /= 10;
        CHECK(r > std::sqrt(2.0) / 1.5);
        CHECK(r < std::sqrt(2.0) * 1.5);
    }
}
