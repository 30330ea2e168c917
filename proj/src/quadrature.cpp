#include "charpoly/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <Eigen/Dense>

namespace charpoly {

namespace {

std::shared_ptr<const Rule> legendre_reference(int k) {
    static std::mutex mtx;
    static std::map<int, std::shared_ptr<const Rule>> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<Rule>();
    rule->nodes.resize(k);
    rule->weights.resize(k);
    const int half = (k + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule->nodes[i] = -x;
        rule->weights[i] = w;
        rule->nodes[k - 1 - i] = x;
        rule->weights[k - 1 - i] = w;
    }
    if (k % 2 == 1) rule->nodes[k / 2] = 0.0;
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(k, rule);
    return rule;
}

// Per-dimension tabulation used by the tensor sum.
struct Axis {
    std::vector<double> x;
    std::vector<std::complex<double>> c;  // weight times 1D factor
};

struct TensorSum {
    std::complex<double> value;
    double abs_sum;
};

// Sums c_0[i0] c_1[i1] ... * coupling(x) in row-major order. The parallel path
// splits only the first index and combines partials in index order, so both
// paths perform the same floating-point operations.
template <class Coupling>
TensorSum tensor_sum(const std::vector<Axis>& axes, const Coupling& coupling, Exec exec) {
    const int d = static_cast<int>(axes.size());
    const int n0 = static_cast<int>(axes[0].x.size());
    std::size_t rest = 1;
    for (int k = 1; k < d; ++k) rest *= axes[k].x.size();

    std::vector<std::complex<double>> partial(n0);
    std::vector<double> partial_abs(n0);
    std::vector<int> bad(n0, 0);

    auto row = [&](int i) {
        double x[4];
        int idx[4] = {i, 0, 0, 0};
        x[0] = axes[0].x[i];
        std::complex<double> acc = 0.0;
        double acc_abs = 0.0;
        for (std::size_t r = 0; r < rest; ++r) {
            std::size_t rr = r;
            std::complex<double> c = axes[0].c[i];
            for (int k = d - 1; k >= 1; --k) {
                const std::size_t nk = axes[k].x.size();
                idx[k] = static_cast<int>(rr % nk);
                rr /= nk;
            }
            for (int k = 1; k < d; ++k) {
                x[k] = axes[k].x[idx[k]];
                c *= axes[k].c[idx[k]];
            }
            if (c == 0.0) continue;
            const std::complex<double> v = coupling(x);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                bad[i] = 1;
                continue;
            }
            const std::complex<double> t = c * v;
            acc += t;
            acc_abs += std::abs(t);
        }
        partial[i] = acc;
        partial_abs[i] = acc_abs;
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n0; ++i) row(i);
    } else {
        for (int i = 0; i < n0; ++i) row(i);
    }

    for (int i = 0; i < n0; ++i) {
        if (bad[i]) {
            std::ostringstream os;
            os << "non-finite integrand value near x0 = " << axes[0].x[i];
            throw IntegrandError(os.str());
        }
    }
    TensorSum s{0.0, 0.0};
    for (int i = 0; i < n0; ++i) {
        s.value += partial[i];
        s.abs_sum += partial_abs[i];
    }
    return s;
}

void check_spec(const QuadratureSpec& spec) {
    const std::size_t d = spec.dims.size();
    if (d < 1 || d > 4) throw std::invalid_argument("quadrature: dimension must be 1..4");
    if (!(spec.tolerance > 0.0 && spec.tolerance < 0.1))
        throw std::invalid_argument("quadrature: tolerance must lie in (0, 0.1)");
    if (spec.max_doublings < 1) throw std::invalid_argument("quadrature: max_doublings must be >= 1");
    for (const auto& ds : spec.dims) {
        if (ds.nodes < 8) throw std::invalid_argument("quadrature: node count must be >= 8");
        if (ds.kind != DomainKind::finite && !(ds.radius > 0.0))
            throw std::invalid_argument("quadrature: truncation radius must be > 0");
        if (!(ds.upper() > ds.lower())) throw std::invalid_argument("quadrature: empty interval");
    }
}

struct Level {
    LogComplex value;
    double log_abs_sum;  // log of the sum of |terms|, same scale as value
    std::uint64_t nodes;
};

// Refinement driver shared by both integrators: level(m) evaluates the rule
// with node multiplier 2^m. A step converges when the change is below the
// tolerance relative to the value, or relative to the sum of |terms| (which
// covers integrals that vanish by symmetry).
template <class LevelFn>
QuadratureResult refine(const QuadratureSpec& spec, const LevelFn& level) {
    QuadratureResult res;
    Level prev{};
    for (int m = 0; m <= spec.max_doublings; ++m) {
        const Level cur = level(m);
        res.value = cur.value;
        res.nodes_used = cur.nodes;
        if (m > 0) {
            double rel;
            if (cur.value.is_zero() && prev.value.is_zero()) rel = 0.0;
            else if (cur.value.is_zero()) rel = INFINITY;
            else rel = rel_diff(prev.value, cur.value);
            const double cancel = cur.value.is_zero() ? 0.0 : std::exp(cur.log_abs_sum - cur.value.log_mag);
            res.est_rel_error = std::max(rel, 1e-15 * cancel);
            const LogComplex diff = cur.value - prev.value;
            const bool abs_ok = diff.is_zero() || diff.log_mag <= std::log(spec.tolerance) + cur.log_abs_sum;
            if (res.est_rel_error < spec.tolerance || abs_ok) {
                res.converged = true;
                return res;
            }
        }
        prev = cur;
    }
    res.converged = false;
    return res;
}

}  // namespace

double DimSpec::lower() const {
    switch (kind) {
        case DomainKind::finite: return a;
        case DomainKind::half_line: return a;
        case DomainKind::full_line: return -radius;
    }
    return a;
}

double DimSpec::upper() const {
    switch (kind) {
        case DomainKind::finite: return b;
        case DomainKind::half_line: return a + radius;
        case DomainKind::full_line: return radius;
    }
    return b;
}

Rule gauss_legendre_rule(int k, double a, double b) {
    if (k < 1) throw std::invalid_argument("gauss_legendre_rule: k must be >= 1");
    if (!(a < b)) throw std::invalid_argument("gauss_legendre_rule: need a < b");
    const auto ref = legendre_reference(k);
    Rule r;
    r.nodes.resize(k);
    r.weights.resize(k);
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (int i = 0; i < k; ++i) {
        r.nodes[i] = c + h * ref->nodes[i];
        r.weights[i] = h * ref->weights[i];
    }
    return r;
}

Rule gauss_hermite_rule(int k) {
    if (k < 1) throw std::invalid_argument("gauss_hermite_rule: k must be >= 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, k);
    for (int i = 1; i < k; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(i / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule r;
    r.nodes.resize(k);
    r.weights.resize(k);
    for (int i = 0; i < k; ++i) {
        r.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        r.weights[i] = std::sqrt(M_PI) * v0 * v0;
    }
    return r;
}

QuadratureResult integrate_nd(const Integrand& f, const QuadratureSpec& spec) {
    check_spec(spec);
    auto level = [&](int m) {
        std::vector<Axis> axes(spec.dims.size());
        std::uint64_t nodes = 1;
        for (std::size_t k = 0; k < spec.dims.size(); ++k) {
            const auto& ds = spec.dims[k];
            const Rule r = gauss_legendre_rule(ds.nodes << m, ds.lower(), ds.upper());
            axes[k].x = r.nodes;
            axes[k].c.assign(r.weights.begin(), r.weights.end());
            nodes *= r.nodes.size();
        }
        const TensorSum s = tensor_sum(axes, f, spec.exec);
        return Level{LogComplex::from_complex(s.value), std::log(s.abs_sum), nodes};
    };
    return refine(spec, level);
}

QuadratureResult integrate_separable(const SeparableIntegrand& f, const QuadratureSpec& spec) {
    check_spec(spec);
    if (f.log_factor.size() != spec.dims.size())
        throw std::invalid_argument("integrate_separable: factor count must match dimension");
    auto level = [&](int m) {
        std::vector<Axis> axes(spec.dims.size());
        double shift = 0.0;
        std::uint64_t nodes = 1;
        for (std::size_t k = 0; k < spec.dims.size(); ++k) {
            const auto& ds = spec.dims[k];
            const Rule r = gauss_legendre_rule(ds.nodes << m, ds.lower(), ds.upper());
            const std::size_t n = r.nodes.size();
            std::vector<std::complex<double>> lg(n);
            double mx = -INFINITY;
            for (std::size_t j = 0; j < n; ++j) {
                lg[j] = f.log_factor[k](r.nodes[j]);
                if (std::isnan(lg[j].real()) || std::isnan(lg[j].imag()) || lg[j].real() == INFINITY) {
                    std::ostringstream os;
                    os << "non-finite log factor in dimension " << k << " at x = " << r.nodes[j];
                    throw IntegrandError(os.str());
                }
                mx = std::max(mx, lg[j].real());
            }
            if (mx == -INFINITY) return Level{LogComplex::zero(), -INFINITY, nodes};
            axes[k].x = r.nodes;
            axes[k].c.resize(n);
            for (std::size_t j = 0; j < n; ++j) {
                const double re = lg[j].real() - mx;
                axes[k].c[j] = re < -745.0 ? 0.0 : r.weights[j] * std::exp(std::complex<double>(re, lg[j].imag()));
            }
            shift += mx;
            nodes *= n;
        }
        const TensorSum s = tensor_sum(axes, f.coupling, spec.exec);
        LogComplex v = LogComplex::from_complex(s.value);
        if (!v.is_zero()) v.log_mag += shift;
        return Level{v, std::log(s.abs_sum) + shift, nodes};
    };
    return refine(spec, level);
}

Interval find_support(const std::function<double(double)>& log_abs, double lo, double hi,
                      bool fixed_lo, bool fixed_hi, double drop) {
    if (!(hi > lo)) throw std::invalid_argument("find_support: need lo < hi");
    constexpr int kScan = 4000;
    for (int attempt = 0; attempt < 30; ++attempt) {
        const double h = (hi - lo) / kScan;
        std::vector<double> v(kScan + 1);
        double mx = -INFINITY;
        for (int j = 0; j <= kScan; ++j) {
            v[j] = log_abs(lo + j * h);
            if (std::isnan(v[j])) v[j] = -INFINITY;
            mx = std::max(mx, v[j]);
        }
        if (mx == -INFINITY) return {lo, hi};
        int first = kScan, last = 0;
        for (int j = 0; j <= kScan; ++j)
            if (v[j] >= mx - drop) {
                first = std::min(first, j);
                last = std::max(last, j);
            }
        const double width = hi - lo;
        bool grew = false;
        if (last == kScan && !fixed_hi) {
            hi += width;
            grew = true;
        }
        if (first == 0 && !fixed_lo) {
            lo -= width;
            grew = true;
        }
        if (grew) continue;
        double a = lo + std::max(0, first - 1) * h;
        double b = lo + std::min(kScan, last + 1) * h;
        // Resolution guard: never shrink below a few scan steps.
        if (b - a < 8 * h) {
            a = std::max(lo, a - 4 * h);
            b = std::min(hi, b + 4 * h);
        }
        return {a, b};
    }
    throw std::runtime_error("find_support: integrand does not decay");
}

int oscillation_nodes(double freq, double span) {
    return 8 + static_cast<int>(std::ceil(std::abs(freq * span) / M_PI));
}

}  // namespace charpoly
