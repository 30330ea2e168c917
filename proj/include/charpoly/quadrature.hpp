#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "charpoly/log_complex.hpp"
#include "charpoly/types.hpp"

namespace charpoly {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre nodes and weights on [a, b]. Rules on [-1, 1] are cached.
Rule gauss_legendre_rule(int k, double a, double b);

// Gauss-Hermite rule for the weight e^{-x^2} (Golub-Welsch).
Rule gauss_hermite_rule(int k);

enum class DomainKind { finite, half_line, full_line };

// half_line maps to [a, a + radius], full_line to [-radius, radius].
struct DimSpec {
    DomainKind kind = DomainKind::finite;
    double a = 0.0;
    double b = 1.0;
    double radius = 1.0;
    int nodes = 64;

    double lower() const;
    double upper() const;
};

struct QuadratureSpec {
    std::vector<DimSpec> dims;
    double tolerance = 1e-10;
    int max_doublings = 3;
    Exec exec = Exec::parallel;
};

struct QuadratureResult {
    LogComplex value;
    double est_rel_error = 0.0;
    std::uint64_t nodes_used = 0;
    bool converged = true;
};

class IntegrandError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Integrand = std::function<std::complex<double>(const double* x)>;

// Tensor-product Gauss-Legendre over d <= 4 dimensions with node doubling.
QuadratureResult integrate_nd(const Integrand& f, const QuadratureSpec& spec);

// Integrand of the form  prod_k exp(log_factor_k(x_k)) * coupling(x).
// Each 1D factor is evaluated in log space and rescaled by its maximum over the
// nodes, so huge or tiny prefactors never reach the tensor sum.
struct SeparableIntegrand {
    std::vector<std::function<std::complex<double>(double)>> log_factor;
    std::function<std::complex<double>(const double* x)> coupling;
};

QuadratureResult integrate_separable(const SeparableIntegrand& f, const QuadratureSpec& spec);

struct Interval {
    double lo, hi;
};

// Smallest interval on which log_abs(x) >= max - drop, found by scanning.
// A free end (fixed_lo/fixed_hi false) is pushed outward while the kept region
// touches it.
Interval find_support(const std::function<double(double)>& log_abs, double lo, double hi,
                      bool fixed_lo, bool fixed_hi, double drop = 46.0);

// Minimum nodes per dimension for a phase e^{i*freq*x} over a span of length R.
int oscillation_nodes(double freq, double span);

}  // namespace charpoly
