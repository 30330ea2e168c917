#include "charpoly/log_complex.hpp"

#include <cmath>

namespace charpoly {

LogComplex LogComplex::from_complex(std::complex<double> z) {
    if (z == 0.0) return zero();
    return {std::log(std::abs(z)), std::arg(z)};
}

std::complex<double> LogComplex::to_complex() const {
    if (is_zero()) return 0.0;
    return std::polar(std::exp(log_mag), phase);
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double s = std::max(a.log_mag, b.log_mag);
    const std::complex<double> sum =
        std::polar(std::exp(a.log_mag - s), a.phase) + std::polar(std::exp(b.log_mag - s), b.phase);
    LogComplex r = LogComplex::from_complex(sum);
    if (!r.is_zero()) r.log_mag += s;
    return r;
}

LogComplex operator-(const LogComplex& a, const LogComplex& b) {
    if (a.log_mag == b.log_mag && a.phase == b.phase) return LogComplex::zero();
    return a + LogComplex{b.log_mag, b.phase + M_PI};
}

double rel_diff(const LogComplex& a, const LogComplex& b) {
    if (b.is_zero()) return a.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
    // |a/b - 1|
    const LogComplex q = a / b;
    if (q.is_zero()) return 1.0;
    return std::abs(std::polar(std::exp(q.log_mag), q.phase) - 1.0);
}

}  // namespace charpoly
