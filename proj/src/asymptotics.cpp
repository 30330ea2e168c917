#include "charpoly/asymptotics.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "charpoly/quadrature.hpp"
#include "charpoly/specfun.hpp"

namespace charpoly {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

void check_bulk(double mu) {
    if (!(std::abs(mu) < 2.0)) throw std::domain_error("asymptotics: need |mu| < 2 (bulk of the spectrum)");
}

void check_sizes(int N, int n) {
    if (N < 1) throw std::invalid_argument("invalid dimension: N must be >= 1");
    if (n < 1 || n > N) throw std::invalid_argument("moment order must satisfy 1 <= n <= N");
}

// log K1 for spectral data (mu, omega, delta).
cd log_k1(int N, int n, double mu, double omega, double delta) {
    const double s = std::sqrt(4.0 - mu * mu);
    const cd qp = (I * mu + s) / 2.0;
    const double Nn = static_cast<double>(N) * n;
    const double lN = std::log(static_cast<double>(N));
    cd v = cd(0.0, -0.5 * M_PI * Nn);                       // (-i)^{Nn}
    v += (Nn - 0.5 * n * n) * lN + 0.5 * n * std::log(2 * M_PI);
    v -= specfun::log_factorial_product(N - n, N - 1);
    v += (Nn - 0.5 * n * n) * std::log(qp);
    v -= 0.25 * n * n * std::log(4.0 - mu * mu);
    v += I * Nn * (omega / 2.0 + I * delta) * qp;
    v -= 0.5 * Nn * (1.0 + (mu * mu - I * mu * s) / 2.0);
    return v;
}

MomentEstimate asym_estimate(cd logv, std::chrono::steady_clock::time_point t0) {
    MomentEstimate e;
    e.method = Method::asymptotic;
    e.value = LogComplex::exp_of(logv);
    e.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

}  // namespace

double semicircle_density(double mu) {
    if (std::abs(mu) > 2.0) throw std::domain_error("semicircle_density: |mu| > 2");
    return std::sqrt(4.0 - mu * mu) / (2 * M_PI);
}

double semicircle_cdf(double x) {
    if (x <= -2.0) return 0.0;
    if (x >= 2.0) return 1.0;
    return 0.5 + (x * std::sqrt(4.0 - x * x) / 4.0 + std::asin(x / 2.0)) / M_PI;
}

SaddlePair saddle_points(double mu) {
    check_bulk(mu);
    const double s = std::sqrt(4.0 - mu * mu);
    return {(I * mu + s) / 2.0, (I * mu - s) / 2.0};
}

MomentEstimate k1_asymptotic(int N, int n, const SpectralPoint& sp) {
    check_sizes(N, n);
    check_bulk(sp.mu());
    const auto t0 = std::chrono::steady_clock::now();
    return asym_estimate(log_k1(N, n, sp.mu(), sp.omega(), sp.delta()), t0);
}

MomentEstimate k1_pair_asymptotic(int N, int n, const SpectralPoint& sp) {
    check_sizes(N, n);
    check_bulk(sp.mu());
    const auto t0 = std::chrono::steady_clock::now();
    const cd a = log_k1(N, n, sp.mu(), sp.omega(), sp.delta());
    const cd b = std::conj(log_k1(N, n, sp.mu(), -sp.omega(), sp.delta()));
    return asym_estimate(a + b, t0);
}

MomentEstimate k2_asymptotic(int N, int n, const SpectralPoint& sp) {
    check_sizes(N, n);
    check_bulk(sp.mu());
    if (N < 2 * n) throw std::invalid_argument("precondition: N >= 2n required");
    const auto t0 = std::chrono::steady_clock::now();
    const cd pair = log_k1(N, n, sp.mu(), sp.omega(), sp.delta()) +
                    std::conj(log_k1(N, n, sp.mu(), -sp.omega(), sp.delta()));
    const double rho = semicircle_density(sp.mu());
    const cd d = -I * (sp.mu1() - sp.mu2_conj());
    const double nn = static_cast<double>(n) * n;
    const cd ratio = nn * (std::log(2 * M_PI * rho) - std::log(d));
    const double lprod = specfun::log_factorial_product(N - n, N - 1) -
                         specfun::log_factorial_product(N - 2 * n, N - n - 1) - nn * std::log(static_cast<double>(N));
    return asym_estimate(pair + ratio + lprod, t0);
}

cd moment_ratio_limit(int n, double mu, double omega, double delta) {
    check_bulk(mu);
    if (omega == 0.0 && delta == 0.0) throw std::domain_error("moment_ratio_limit: omega = delta = 0 is singular");
    const cd r = 2 * M_PI * semicircle_density(mu) / (-I * cd(omega, 2.0 * delta));
    return std::pow(r, n * n);
}

MomentEstimate chiral_limit_moment(int n, double x, const QuadOptions& quad) {
    if (n < 1 || n > 2) throw std::invalid_argument("chiral_limit_moment: n must be 1 or 2");
    if (!(x > 0.0)) throw std::invalid_argument("chiral_limit_moment: x must be > 0");
    const auto t0 = std::chrono::steady_clock::now();
    // q = e^u, dq = q du.
    auto logf = [n, x](double u) -> cd { return {(1 - n) * u - x * std::cosh(u), 0.0}; };
    const double drop = 46.0 * quad.radius_scale * quad.radius_scale;
    const Interval iv = find_support([&](double u) { return logf(u).real(); }, -3.0, 3.0, false, false, drop);
    QuadratureSpec spec;
    spec.tolerance = quad.tolerance;
    spec.max_doublings = quad.max_doublings >= 1 ? quad.max_doublings : 3;
    spec.exec = quad.exec;
    SeparableIntegrand f;
    for (int k = 0; k < n; ++k) {
        DimSpec ds;
        ds.a = iv.lo;
        ds.b = iv.hi;
        ds.nodes = quad.nodes > 0 ? quad.nodes : (n == 1 ? 200 : 100);
        spec.dims.push_back(ds);
        f.log_factor.push_back(logf);
    }
    f.coupling = [n](const double* u) -> cd {
        if (n == 1) return 1.0;
        const double d = std::exp(u[0]) - std::exp(u[1]);
        return d * d;
    };
    const QuadratureResult r = integrate_separable(f, spec);
    MomentEstimate e;
    e.method = Method::quadrature;
    e.value = r.value;
    e.rel_error = r.est_rel_error;
    e.std_error = r.value.is_zero() ? 0.0 : r.est_rel_error * std::exp(r.value.log_mag);
    e.n_samples = r.nodes_used;
    e.converged = r.converged;
    e.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

double chiral_quenched_bessel(double x_f, double x_b) {
    if (!(x_f > 0.0) || !(x_b > 0.0)) throw std::invalid_argument("chiral_quenched_bessel: need x_f, x_b > 0");
    using namespace specfun;
    return x_f * bessel_i(1, 2 * x_f) * bessel_k(0, 2 * x_b) + x_b * bessel_i(0, 2 * x_f) * bessel_k(1, 2 * x_b);
}

cd generating_asymptotic(int N, double mu, double omega_b, double omega_f, double delta) {
    check_bulk(mu);
    if (N < 1) throw std::invalid_argument("invalid dimension: N must be >= 1");
    const double a = N * M_PI * semicircle_density(mu);
    const cd w = cd(omega_b, 2.0 * delta);
    const double f = omega_f;
    if (w == 0.0) {
        if (f == 0.0) return -4.0;
        throw std::domain_error("generating_asymptotic: omega_b = delta = 0 with omega_f != 0 is singular");
    }
    if (f == 0.0) return std::exp(I * a * w) * (2.0 * I * a * w - 4.0);
    return (std::exp(I * a * (w + f)) * (w - f) * (w - f) - std::exp(I * a * (w - f)) * (w + f) * (w + f)) / (w * f);
}

}  // namespace charpoly
