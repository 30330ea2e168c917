#include "charpoly/exact_moments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

#include "charpoly/specfun.hpp"

namespace charpoly {

namespace {

using cd = std::complex<double>;
using Clock = std::chrono::steady_clock;
constexpr cd I{0.0, 1.0};

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double lfp(int a, int b) { return specfun::log_factorial_product(a, b); }

// q = origin + dir * x for real x.
struct Contour {
    cd origin{0.0, 0.0};
    cd dir{1.0, 0.0};
    cd at(double x) const { return origin + dir * x; }
};

// Ray for a half-line factor e^{N(i a q - q^2/2)} with Im a >= 0. The ray
// leans toward the saddle of the action so that the phase is nearly
// stationary along it; |angle| <= pi/5 keeps the Gaussian decaying.
Contour half_line_ray(cd a) {
    const double re = a.real();
    const double ang = std::min(std::asin(std::min(std::abs(re), 2.0) / 2.0), M_PI / 5.0);
    return {0.0, std::polar(1.0, re >= 0 ? ang : -ang)};
}

// Shift for a full-line factor e^{N(i a q - q^2/2)}: q = x + i a turns the
// exponent into -N(x^2 + a^2)/2.
Contour full_line_shift(cd a) { return {I * a, 1.0}; }

cd vandermonde_sq(const cd* q, int n) {
    cd v = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) v *= (q[i] - q[j]) * (q[i] - q[j]);
    return v;
}

struct Axis1D {
    std::function<cd(double)> log_factor;  // in the contour parameter, Jacobian included
    bool half_line;
};

struct AxisPlan {
    Interval support;
    int nodes;
};

// Support and node count for one axis: truncation by scan, plus the
// oscillation guard from the total phase swing of the factor on the support.
AxisPlan plan_axis(const Axis1D& ax, int base_nodes, double radius_scale, double hi0 = 3.0) {
    const double drop = 46.0 * radius_scale * radius_scale;
    auto log_abs = [&](double x) { return ax.log_factor(x).real(); };
    const Interval iv = ax.half_line ? find_support(log_abs, 0.0, hi0, true, false, drop)
                                     : find_support(log_abs, -hi0, hi0, false, false, drop);
    constexpr int kScan = 2000;
    double swing = 0.0;
    double prev = ax.log_factor(iv.lo + 1e-12 * (iv.hi - iv.lo)).imag();
    for (int j = 1; j <= kScan; ++j) {
        const double cur = ax.log_factor(iv.lo + (iv.hi - iv.lo) * j / kScan).imag();
        if (std::isfinite(cur) && std::isfinite(prev)) swing += std::abs(cur - prev);
        prev = cur;
    }
    const int guard = 8 + static_cast<int>(std::ceil(swing / M_PI));
    return {iv, std::max(base_nodes, guard)};
}

int default_nodes(int d, const QuadOptions& q) {
    if (q.nodes > 0) return q.nodes;
    if (d <= 2) return 200;
    return d == 3 ? 64 : 40;
}

int default_doublings(int d, const QuadOptions& q) {
    if (q.max_doublings >= 1) return q.max_doublings;
    if (d <= 2) return 3;
    return d == 3 ? 2 : 1;
}

QuadratureResult run_separable(const std::vector<Axis1D>& axes, std::function<cd(const double*)> coupling,
                               const QuadOptions& q) {
    const int d = static_cast<int>(axes.size());
    QuadratureSpec spec;
    spec.tolerance = q.tolerance;
    spec.max_doublings = default_doublings(d, q);
    spec.exec = q.exec;
    SeparableIntegrand f;
    f.coupling = std::move(coupling);
    const int base = default_nodes(d, q);
    for (const auto& ax : axes) {
        const AxisPlan p = plan_axis(ax, base, q.radius_scale);
        DimSpec ds;
        ds.kind = DomainKind::finite;
        ds.a = p.support.lo;
        ds.b = p.support.hi;
        ds.nodes = p.nodes;
        spec.dims.push_back(ds);
        f.log_factor.push_back(ax.log_factor);
    }
    return integrate_separable(f, spec);
}

MomentEstimate to_estimate(const QuadratureResult& r, const LogComplex& constant, Clock::time_point t0) {
    MomentEstimate est;
    est.method = Method::quadrature;
    est.value = r.value * constant;
    if (r.value.is_zero()) est.value = LogComplex::zero();
    est.rel_error = r.est_rel_error;
    est.std_error = est.value.is_zero() ? 0.0 : r.est_rel_error * std::exp(est.value.log_mag);
    est.n_samples = r.nodes_used;
    est.converged = r.converged;
    if (!r.converged) est.warnings.push_back("quadrature did not reach the requested tolerance");
    est.runtime_ms = elapsed_ms(t0);
    return est;
}

// Factor q^{power} e^{N(i a q - q^2/2)} on a contour, as a log in the parameter.
Axis1D gaussian_axis(int N, double power, cd a, const Contour& c, bool half_line) {
    return {[=](double x) -> cd {
                const cd q = c.at(x);
                if (q == 0.0) return {-INFINITY, 0.0};
                return std::log(c.dir) + power * std::log(q) + static_cast<double>(N) * (I * a * q - 0.5 * q * q);
            },
            half_line};
}

void check_k1(const MomentParams& p, int max_n) {
    if (p.N < 1) throw std::invalid_argument("invalid dimension: N must be >= 1");
    if (p.n < 1 || p.n > max_n) throw std::invalid_argument("unsupported moment order for this evaluator");
    if (p.N < p.n) throw std::invalid_argument("precondition: N >= n required");
}

LogComplex positive_constant(int N, int n) {
    // (-i)^{Nn} N^{n^2/2} (2 pi)^{-n/2} / prod_{j=1}^n j!
    return {0.5 * n * n * std::log(static_cast<double>(N)) - 0.5 * n * std::log(2 * M_PI) - lfp(1, n),
            -0.5 * M_PI * N * n};
}

}  // namespace

LogComplex k1_determinant_constant(int N, int n) {
    return {N * n * std::log(static_cast<double>(N)) - lfp(0, n - 1) - lfp(N - n, N - 1), -0.5 * M_PI * N * n};
}

MomentEstimate k1_negative_exact(const MomentParams& p) {
    check_k1(p, 3);
    const auto t0 = Clock::now();
    const int N = p.N, n = p.n;
    const cd mu1 = p.sp.mu1();
    const Contour c = half_line_ray(mu1);
    std::vector<Axis1D> axes(n, gaussian_axis(N, N - n, mu1, c, true));
    auto coupling = [c, n](const double* x) {
        cd q[3];
        for (int i = 0; i < n; ++i) q[i] = c.at(x[i]);
        return vandermonde_sq(q, n);
    };
    const QuadratureResult r = run_separable(axes, coupling, p.quad);
    // (-iN)^{Nn} / (prod_{j=N-n}^{N-1} j! prod_{j=1}^n j!)
    const LogComplex C{N * n * std::log(static_cast<double>(N)) - lfp(N - n, N - 1) - lfp(1, n), -0.5 * M_PI * N * n};
    return to_estimate(r, C, t0);
}

MomentEstimate k1_negative_determinant(const MomentParams& p, MonicFamily family) {
    check_k1(p, 64);
    const auto t0 = Clock::now();
    const int N = p.N, n = p.n;
    const cd mu1 = p.sp.mu1();
    const Contour c = half_line_ray(mu1);
    const Axis1D ax = gaussian_axis(N, N - n, mu1, c, true);
    const AxisPlan plan = plan_axis(ax, default_nodes(1, p.quad), p.quad.radius_scale);
    const double shift_poly = family == MonicFamily::shifted ? 1.0 : 0.0;

    auto level = [&](int k) {
        const Rule r = gauss_legendre_rule(k, plan.support.lo, plan.support.hi);
        std::vector<cd> lg(k);
        double mx = -INFINITY;
        for (int i = 0; i < k; ++i) {
            lg[i] = ax.log_factor(r.nodes[i]);
            mx = std::max(mx, lg[i].real());
        }
        Eigen::MatrixXcd Phi = Eigen::MatrixXcd::Zero(n, n);
        std::vector<cd> pi(n);
        for (int i = 0; i < k; ++i) {
            const double re = lg[i].real() - mx;
            if (re < -745.0) continue;
            const cd w = r.weights[i] * std::exp(cd(re, lg[i].imag()));
            const cd q = c.at(r.nodes[i]);
            pi[0] = 1.0;
            for (int j = 1; j < n; ++j) pi[j] = pi[j - 1] * (q - shift_poly);
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) {
                    const cd t = w * pi[j] * pi[l];
                    Phi(j, l) += t;
                }
        }
        LogComplex det = LogComplex::from_complex(Phi.partialPivLu().determinant());
        if (!det.is_zero()) det.log_mag += n * mx;
        return det;
    };

    QuadratureResult res;
    LogComplex prev;
    int k = plan.nodes;
    const int doublings = default_doublings(1, p.quad);
    for (int m = 0; m <= doublings; ++m, k *= 2) {
        const LogComplex cur = level(k);
        res.value = cur;
        res.nodes_used = static_cast<std::uint64_t>(k);
        if (m > 0) {
            res.est_rel_error = cur.is_zero() ? INFINITY : rel_diff(prev, cur);
            if (res.est_rel_error < p.quad.tolerance) break;
        }
        prev = cur;
    }
    res.converged = res.est_rel_error < p.quad.tolerance;
    return to_estimate(res, k1_determinant_constant(N, n), t0);
}

MomentEstimate k1_positive_exact(const MomentParams& p) {
    check_k1(p, 3);
    const auto t0 = Clock::now();
    const int N = p.N, n = p.n;
    const cd mu1 = p.sp.mu1();
    const Contour c = full_line_shift(mu1);
    std::vector<Axis1D> axes(n, gaussian_axis(N, N, mu1, c, false));
    auto coupling = [c, n](const double* x) {
        cd q[3];
        for (int i = 0; i < n; ++i) q[i] = c.at(x[i]);
        return vandermonde_sq(q, n);
    };
    const QuadratureResult r = run_separable(axes, coupling, p.quad);
    const LogComplex C = positive_constant(N, n) * LogComplex::exp_of(0.5 * N * n * mu1 * mu1);
    return to_estimate(r, C, t0);
}

MomentEstimate k2_negative_exact(const MomentParams& p) {
    const int N = p.N, n = p.n;
    if (N < 1) throw std::invalid_argument("invalid dimension: N must be >= 1");
    if (n < 1 || n > 2) throw std::invalid_argument("unsupported moment order: k2_negative_exact needs n in {1,2}");
    if (N < 2 * n) throw std::invalid_argument("precondition: N >= 2n required");
    const auto t0 = Clock::now();
    const cd mu1 = p.sp.mu1(), mu2c = p.sp.mu2_conj();
    const cd a1 = mu1, a2 = -mu2c;
    const Contour c1 = half_line_ray(a1), c2 = half_line_ray(a2);
    std::vector<Axis1D> axes;
    for (int i = 0; i < n; ++i) axes.push_back(gaussian_axis(N, N - 2 * n, a1, c1, true));
    for (int i = 0; i < n; ++i) axes.push_back(gaussian_axis(N, N - 2 * n, a2, c2, true));
    auto coupling = [c1, c2, n](const double* x) {
        cd q1[2], q2[2];
        for (int i = 0; i < n; ++i) {
            q1[i] = c1.at(x[i]);
            q2[i] = c2.at(x[n + i]);
        }
        cd v = vandermonde_sq(q1, n) * vandermonde_sq(q2, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v *= q1[i] + q2[j];
        return v;
    };
    const QuadratureResult r = run_separable(axes, coupling, p.quad);
    // N^{2Nn-n^2} / (prod_{j=N-n}^{N-1} j!(j-n)! [prod_{j=1}^n j!]^2) * (-i(mu1 - mu2*))^{-n^2}
    const double lm = (2.0 * N * n - n * n) * std::log(static_cast<double>(N)) - lfp(N - n, N - 1) -
                      lfp(N - 2 * n, N - n - 1) - 2.0 * lfp(1, n);
    const LogComplex C = LogComplex{lm, 0.0} * LogComplex::from_complex(-I * (mu1 - mu2c)).pow(-n * n);
    return to_estimate(r, C, t0);
}

MomentEstimate k2_positive_exact(const MomentParams& p) {
    const int N = p.N, n = p.n;
    if (N < 1) throw std::invalid_argument("invalid dimension: N must be >= 1");
    if (n < 1 || n > 2) throw std::invalid_argument("unsupported moment order: k2_positive_exact needs n in {1,2}");
    const cd mu1 = p.sp.mu1(), mu2c = p.sp.mu2_conj();
    if (mu1 == mu2c) {
        MomentParams q = p;
        q.n = 2 * n;
        if (q.n > 3) throw std::invalid_argument("k2_positive_exact: coincident points need n = 1");
        return k1_positive_exact(q);
    }
    const auto t0 = Clock::now();
    const cd a1 = mu1, a2 = -mu2c;
    const Contour c1 = full_line_shift(a1), c2 = full_line_shift(a2);
    std::vector<Axis1D> axes;
    for (int i = 0; i < n; ++i) axes.push_back(gaussian_axis(N, N, a1, c1, false));
    for (int i = 0; i < n; ++i) axes.push_back(gaussian_axis(N, N, a2, c2, false));
    auto coupling = [c1, c2, n](const double* x) {
        cd q1[2], q2[2];
        for (int i = 0; i < n; ++i) {
            q1[i] = c1.at(x[i]);
            q2[i] = c2.at(x[n + i]);
        }
        cd v = vandermonde_sq(q1, n) * vandermonde_sq(q2, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v *= q1[i] + q2[j];
        return v;
    };
    const QuadratureResult r = run_separable(axes, coupling, p.quad);
    const LogComplex C1 = positive_constant(N, n);
    const LogComplex C = C1 * C1 * LogComplex::from_complex(I * (mu1 - mu2c)).pow(-n * n) *
                         LogComplex::exp_of(0.5 * N * n * (mu1 * mu1 + mu2c * mu2c));
    return to_estimate(r, C, t0);
}

MomentEstimate chiral_negative_exact(int N, int n, double m, const QuadOptions& quad) {
    if (N < 1) throw std::invalid_argument("invalid dimension: N must be >= 1");
    if (n < 1 || n > 2) throw std::invalid_argument("unsupported moment order: chiral_negative_exact needs n in {1,2}");
    if (N < n) throw std::invalid_argument("precondition: N >= n required");
    if (!(m > 0.0)) throw std::invalid_argument("chiral_negative_exact: mass m must be > 0");
    const auto t0 = Clock::now();
    const Axis1D ax{[=](double q) -> cd {
                        if (q <= 0.0) return {N - n > 0 ? -INFINITY : -N * std::log(m), 0.0};
                        return {(N - n) * std::log(q) - N * std::log(q + m) - m * N * q, 0.0};
                    },
                    true};
    std::vector<Axis1D> axes(n, ax);
    auto coupling = [n](const double* x) {
        cd q[2] = {x[0], n > 1 ? x[1] : 0.0};
        return vandermonde_sq(q, n);
    };
    QuadOptions q = quad;
    const QuadratureResult r = [&] {
        const int d = n;
        QuadratureSpec spec;
        spec.tolerance = q.tolerance;
        spec.max_doublings = default_doublings(d, q);
        spec.exec = q.exec;
        SeparableIntegrand f;
        f.coupling = coupling;
        for (int k = 0; k < d; ++k) {
            const AxisPlan pl = plan_axis(ax, default_nodes(d, q), q.radius_scale, 60.0 / (m * N));
            DimSpec ds;
            ds.a = pl.support.lo;
            ds.b = pl.support.hi;
            ds.nodes = pl.nodes;
            spec.dims.push_back(ds);
            f.log_factor.push_back(ax.log_factor);
        }
        return integrate_separable(f, spec);
    }();
    const LogComplex C{N * n * std::log(static_cast<double>(N)) - lfp(N - n, N - 1) - lfp(1, n), 0.0};
    return to_estimate(r, C, t0);
}

LogComplex generating_raw(int N, const GeneratingPoint& g, const QuadOptions& quad, QuadratureResult* info) {
    if (N < 3) throw std::invalid_argument("generating function quadrature needs N >= 3");
    if (!(g.mu1b.imag() > 0.0) || !(g.mu2b_conj.imag() < 0.0))
        throw std::invalid_argument("generating function: bosonic parameters need Im mu_b > 0");
    if (g.mu1f == g.mu2f) throw std::invalid_argument("generating function: fermionic parameters must differ");

    const Contour cq1 = full_line_shift(g.mu1f), cq2 = full_line_shift(g.mu2f);
    const cd ap1 = g.mu1b, ap2 = -g.mu2b_conj;
    const Contour cp1 = half_line_ray(ap1), cp2 = half_line_ray(ap2);
    const Axis1D q1 = gaussian_axis(N, N - 2, g.mu1f, cq1, false);
    const Axis1D q2 = gaussian_axis(N, N - 2, g.mu2f, cq2, false);
    const Axis1D p1 = gaussian_axis(N, N - 2, ap1, cp1, true);
    const Axis1D p2 = gaussian_axis(N, N - 2, ap2, cp2, true);
    const int base = default_nodes(2, quad);
    const AxisPlan pq1 = plan_axis(q1, base, quad.radius_scale), pq2 = plan_axis(q2, base, quad.radius_scale);
    const AxisPlan pp1 = plan_axis(p1, base, quad.radius_scale), pp2 = plan_axis(p2, base, quad.radius_scale);

    struct Tab {
        std::vector<cd> q, c;
        double shift;
    };
    auto tabulate = [](const Axis1D& ax, const Contour& ct, const AxisPlan& pl, int mult) {
        const Rule r = gauss_legendre_rule(pl.nodes * mult, pl.support.lo, pl.support.hi);
        Tab t;
        const std::size_t k = r.nodes.size();
        std::vector<cd> lg(k);
        double mx = -INFINITY;
        for (std::size_t i = 0; i < k; ++i) {
            lg[i] = ax.log_factor(r.nodes[i]);
            mx = std::max(mx, lg[i].real());
        }
        t.shift = mx;
        t.q.resize(k);
        t.c.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            t.q[i] = ct.at(r.nodes[i]);
            const double re = lg[i].real() - mx;
            t.c[i] = re < -745.0 ? cd(0.0) : r.weights[i] * std::exp(cd(re, lg[i].imag()));
        }
        return t;
    };

    // sum_{q1,q2} (q1 - q2) g1 g2 prod (p1 - q_i)(p2 + q_i) collapses to moments
    // of each q-factor: A_k = p1 p2 M_k + (p1 - p2) M_{k+1} - M_{k+2}.
    auto level = [&](int mult, double& log_abs) {
        const Tab g1 = tabulate(q1, cq1, pq1, mult), g2 = tabulate(q2, cq2, pq2, mult);
        const Tab h1 = tabulate(p1, cp1, pp1, mult), h2 = tabulate(p2, cp2, pp2, mult);
        cd M1[4] = {}, M2[4] = {};
        for (std::size_t i = 0; i < g1.q.size(); ++i) {
            cd pw = g1.c[i];
            for (int j = 0; j < 4; ++j, pw *= g1.q[i]) M1[j] += pw;
        }
        for (std::size_t i = 0; i < g2.q.size(); ++i) {
            cd pw = g2.c[i];
            for (int j = 0; j < 4; ++j, pw *= g2.q[i]) M2[j] += pw;
        }
        const int n1 = static_cast<int>(h1.q.size());
        const std::size_t n2 = h2.q.size();
        std::vector<cd> partial(n1);
        std::vector<double> partial_abs(n1);
        auto row = [&](int i) {
            const cd a = h1.q[i];
            cd acc = 0.0;
            double acc_abs = 0.0;
            for (std::size_t j = 0; j < n2; ++j) {
                const cd b = h2.q[j];
                const cd ab = a * b, amb = a - b;
                const cd A0 = ab * M1[0] + amb * M1[1] - M1[2];
                const cd A1 = ab * M1[1] + amb * M1[2] - M1[3];
                const cd B0 = ab * M2[0] + amb * M2[1] - M2[2];
                const cd B1 = ab * M2[1] + amb * M2[2] - M2[3];
                const cd t = h1.c[i] * h2.c[j] * (a + b) * (A1 * B0 - A0 * B1);
                acc += t;
                acc_abs += std::abs(t);
            }
            partial[i] = acc;
            partial_abs[i] = acc_abs;
        };
        if (quad.exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
            for (int i = 0; i < n1; ++i) row(i);
        } else {
            for (int i = 0; i < n1; ++i) row(i);
        }
        cd tot = 0.0;
        double tot_abs = 0.0;
        for (int i = 0; i < n1; ++i) {
            tot += partial[i];
            tot_abs += partial_abs[i];
        }
        const double shift = g1.shift + g2.shift + h1.shift + h2.shift;
        log_abs = std::log(tot_abs) + shift;
        LogComplex v = LogComplex::from_complex(tot);
        if (!v.is_zero()) v.log_mag += shift;
        return v;
    };

    QuadratureResult res;
    LogComplex prev;
    const int doublings = default_doublings(2, quad);
    for (int m = 0, mult = 1; m <= doublings; ++m, mult *= 2) {
        double la = 0.0;
        const LogComplex cur = level(mult, la);
        res.value = cur;
        res.nodes_used = static_cast<std::uint64_t>(pq1.nodes + pq2.nodes) * mult +
                         static_cast<std::uint64_t>(pp1.nodes) * pp2.nodes * mult * mult;
        if (m > 0) {
            res.est_rel_error = cur.is_zero() ? INFINITY : rel_diff(prev, cur);
            if (res.est_rel_error < quad.tolerance) break;
        }
        prev = cur;
    }
    res.converged = res.est_rel_error < quad.tolerance;
    const LogComplex pre = LogComplex::exp_of(0.5 * N * (g.mu1f * g.mu1f + g.mu2f * g.mu2f)) /
                           LogComplex::from_complex((g.mu1b - g.mu2b_conj) * (g.mu1f - g.mu2f));
    res.value = res.value * pre;
    if (info) *info = res;
    return res.value;
}

namespace {

GeneratingPoint generating_reference() {
    const cd b1{0.1, 0.3}, b2c{-0.1, -0.3};
    return {b1, b2c, b1, b2c};
}

LogComplex generating_calibration(int N, const QuadOptions& quad) {
    static std::mutex mtx;
    static std::map<int, LogComplex> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
    }
    QuadOptions q = quad;
    q.tolerance = std::min(q.tolerance, 1e-12);
    const LogComplex c = generating_raw(N, generating_reference(), q).inverse();
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(N, c);
    return c;
}

}  // namespace

MomentEstimate generating_exact(int N, const GeneratingPoint& g, const QuadOptions& quad) {
    const auto t0 = Clock::now();
    QuadratureResult info;
    generating_raw(N, g, quad, &info);
    return to_estimate(info, generating_calibration(N, quad), t0);
}

LogComplex chiral_generating_raw(int N, double m_f, double m_b, const QuadOptions& quad, QuadratureResult* info) {
    if (N < 2) throw std::invalid_argument("chiral generating function needs N >= 2");
    if (!(m_f > 0.0) || !(m_b > 0.0)) throw std::invalid_argument("chiral generating function: masses must be > 0");
    const double xf = N * m_f, xb = N * m_b;
    const Axis1D r{[=](double v) -> cd {
                       if (v <= 0.0) return {-INFINITY, 0.0};
                       return {(N - 1) * std::log(v) - N * v + specfun::log_bessel_i(0, 2 * xf * std::sqrt(v)), 0.0};
                   },
                   true};
    const Axis1D t{[=](double v) -> cd {
                       if (v <= 0.0) return {-INFINITY, 0.0};
                       return {(N - 1) * std::log(v) - N * v + specfun::log_bessel_k(0, 2 * xb * std::sqrt(v)), 0.0};
                   },
                   true};
    const QuadratureResult res = run_separable({r, t}, [](const double* x) { return cd(x[0] - x[1]); }, quad);
    QuadratureResult out = res;
    out.value = res.value * LogComplex{-xf * xf / N, 0.0};
    if (info) *info = out;
    return out.value;
}

LogComplex chiral_generating_constant(int N) {
    return {std::log(2.0) + (2.0 * N + 1) * std::log(static_cast<double>(N)) - 2.0 * specfun::log_gamma(N), 0.0};
}

MomentEstimate chiral_generating_exact(int N, double m_f, double m_b, const QuadOptions& quad) {
    static std::mutex mtx;
    static std::map<int, LogComplex> cache;
    const auto t0 = Clock::now();
    LogComplex cal;
    bool have = false;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(N);
        if (it != cache.end()) {
            cal = it->second;
            have = true;
        }
    }
    if (!have) {
        QuadOptions q = quad;
        q.tolerance = std::min(q.tolerance, 1e-12);
        const double m_ref = 1.0 / N;
        cal = chiral_generating_raw(N, m_ref, m_ref, q).inverse();
        std::lock_guard<std::mutex> lock(mtx);
        cache.emplace(N, cal);
    }
    QuadratureResult info;
    chiral_generating_raw(N, m_f, m_b, quad, &info);
    return to_estimate(info, cal, t0);
}

}  // namespace charpoly
