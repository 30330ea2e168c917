#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "charpoly/quadrature.hpp"

using namespace charpoly;
using cd = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

double sum_rule(const Rule& r, double (*f)(double)) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}

DimSpec finite(double a, double b, int nodes) {
    DimSpec d;
    d.a = a;
    d.b = b;
    d.nodes = nodes;
    return d;
}

}  // namespace

TEST_SUITE("quadrature") {
    TEST_CASE("two-point Gauss-Legendre") {
        const auto r = gauss_legendre_rule(2, -1, 1);
        CHECK(std::abs(std::abs(r.nodes[0]) - 1 / std::sqrt(3.0)) < 1e-15);
        CHECK(std::abs(r.nodes[0] + r.nodes[1]) < 1e-15);
        CHECK(r.weights[0] == doctest::Approx(1.0));
        CHECK(r.weights[1] == doctest::Approx(1.0));
        CHECK(std::abs(sum_rule(gauss_legendre_rule(2, 0, 1), [](double x) { return x * x * x; }) - 0.25) < 1e-15);
    }

    TEST_CASE("Gauss-Legendre degree exactness and sin") {
        for (int k : {1, 3, 7, 20, 64}) {
            const auto r = gauss_legendre_rule(k, -0.5, 2.0);
            for (int m = 0; m <= 2 * k - 1; m += std::max(1, k / 4)) {
                double s = 0.0;
                for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], m);
                const double exact = (std::pow(2.0, m + 1) - std::pow(-0.5, m + 1)) / (m + 1);
                CHECK(std::abs(s - exact) < 1e-12 * std::max(1.0, std::abs(exact)));
            }
        }
        CHECK(std::abs(sum_rule(gauss_legendre_rule(20, 0, pi), [](double x) { return std::sin(x); }) - 2.0) < 1e-12);
    }

    TEST_CASE("Gauss-Hermite moments") {
        const double sp = std::sqrt(pi);
        CHECK(std::abs(sum_rule(gauss_hermite_rule(1), [](double) { return 1.0; }) - sp) < 1e-14);
        CHECK(std::abs(sum_rule(gauss_hermite_rule(2), [](double x) { return x * x; }) - sp / 2) < 1e-14);
        CHECK(std::abs(sum_rule(gauss_hermite_rule(4), [](double x) { return std::pow(x, 6); }) - 15 * sp / 8) < 1e-13);
        CHECK(std::abs(sum_rule(gauss_hermite_rule(30), [](double x) { return std::pow(x, 10); }) - 945 * sp / 32) <
              1e-10);
    }

    TEST_CASE("integrate_nd examples") {
        QuadratureSpec s;
        s.dims = {finite(0, 1, 8), finite(0, 1, 8)};
        auto r = integrate_nd([](const double*) { return cd(1, 0); }, s);
        CHECK(std::abs(r.value.to_complex() - 1.0) < 1e-14);
        CHECK(r.converged);

        s.dims = {finite(0, 2 * pi, 64)};
        r = integrate_nd([](const double* x) { return std::exp(cd(0, x[0])); }, s);
        CHECK(std::abs(r.value.to_complex()) < 1e-10);

        // Selberg n=2, t=1: 4 pi
        DimSpec full;
        full.kind = DomainKind::full_line;
        full.radius = 12.0;
        full.nodes = 64;
        s.dims = {full, full};
        r = integrate_nd(
            [](const double* x) { return cd((x[0] - x[1]) * (x[0] - x[1]) * std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2)); },
            s);
        CHECK(std::abs(r.value.to_complex() - 4 * pi) < 1e-10);
    }

    TEST_CASE("integrate_nd in three and four dimensions") {
        QuadratureSpec s;
        s.dims = {finite(0, 1, 8), finite(0, 2, 8), finite(-1, 1, 8), finite(0, 1, 8)};
        const auto r = integrate_nd([](const double* x) { return cd(x[0] * x[1] * x[1] + x[2] * x[2] * x[3]); }, s);
        // int x0 x1^2 = 1/2 * 8/3 * 2 * 1, int x2^2 x3 = 2/3 * 1/2 * 1 * 2
        CHECK(std::abs(r.value.to_complex() - (8.0 / 3 + 2.0 / 3)) < 1e-13);
    }

    TEST_CASE("half-line mapping") {
        QuadratureSpec s;
        DimSpec h;
        h.kind = DomainKind::half_line;
        h.a = 0.0;
        h.radius = 40.0;
        h.nodes = 64;
        s.dims = {h};
        const auto r = integrate_nd([](const double* x) { return cd(x[0] * x[0] * std::exp(-x[0])); }, s);
        CHECK(std::abs(r.value.to_complex() - 2.0) < 1e-10);
    }

    TEST_CASE("refinement error decreases or is flagged") {
        QuadratureSpec s;
        s.dims = {finite(0, 10, 8)};
        s.max_doublings = 4;
        s.tolerance = 1e-13;
        double prev = 1.0;
        for (int n : {8, 16, 32}) {
            s.dims[0].nodes = n;
            s.max_doublings = 1;
            const auto r = integrate_nd([](const double* x) { return std::exp(cd(0, 3 * x[0])) / (1 + x[0]); }, s);
            CHECK((r.est_rel_error < prev || !r.converged));
            prev = r.est_rel_error;
        }
        s.dims[0].nodes = 8;
        s.max_doublings = 1;
        const auto coarse = integrate_nd([](const double* x) { return std::exp(cd(0, 30 * x[0])); }, s);
        CHECK_FALSE(coarse.converged);
    }

    TEST_CASE("spec validation") {
        QuadratureSpec s;
        s.dims = {finite(0, 1, 4)};
        CHECK_THROWS_AS(integrate_nd([](const double*) { return cd(1); }, s), std::invalid_argument);
        s.dims = {finite(0, 1, 8)};
        s.tolerance = 0.5;
        CHECK_THROWS_AS(integrate_nd([](const double*) { return cd(1); }, s), std::invalid_argument);
        s.tolerance = 1e-10;
        s.dims.assign(5, finite(0, 1, 8));
        CHECK_THROWS_AS(integrate_nd([](const double*) { return cd(1); }, s), std::invalid_argument);
    }

    TEST_CASE("non-finite integrand reports the node") {
        QuadratureSpec s;
        s.dims = {finite(-1, 1, 8)};
        CHECK_THROWS_AS(integrate_nd([](const double*) { return cd(std::nan(""), 0); }, s), IntegrandError);
    }

    TEST_CASE("separable integrand matches the tensor integral") {
        QuadratureSpec s;
        DimSpec h;
        h.kind = DomainKind::half_line;
        h.radius = 30.0;
        h.nodes = 80;
        s.dims = {h, h};
        SeparableIntegrand f;
        for (int k = 0; k < 2; ++k) f.log_factor.push_back([](double x) { return cd(-x + 500.0, 0.0); });
        f.coupling = [](const double* x) { return cd((x[0] - x[1]) * (x[0] - x[1])); };
        const auto r = integrate_separable(f, s);
        // <x^2> + <y^2> - 2 <x><y> = 2 for unit exponentials, times e^{1000}
        CHECK(std::abs(r.value.log_mag - (1000.0 + std::log(2.0))) < 1e-10);
        CHECK(std::abs(r.value.phase) < 1e-12);
    }

    TEST_CASE("find_support and oscillation guard") {
        const auto iv = find_support([](double x) { return -x * x / 2; }, -100, 100, false, false, 46.0);
        CHECK(iv.lo == doctest::Approx(-std::sqrt(92.0)).epsilon(0.05));
        CHECK(iv.hi == doctest::Approx(std::sqrt(92.0)).epsilon(0.05));
        const auto grown = find_support([](double x) { return -x; }, 0, 1, true, false, 46.0);
        CHECK(grown.lo == 0.0);
        CHECK(grown.hi >= 46.0);
        CHECK(oscillation_nodes(4.0, 10.0) == 8 + static_cast<int>(std::ceil(40.0 / pi)));
        CHECK(oscillation_nodes(0.0, 10.0) == 8);
    }
}
