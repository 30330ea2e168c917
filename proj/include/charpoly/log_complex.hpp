#pragma once

#include <complex>
#include <limits>

namespace charpoly {

// Complex number stored as (log|z|, arg z). The phase is never reduced
// mod 2π by products, so factor-by-factor accumulation keeps branch history.
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    LogComplex() = default;
    LogComplex(double lm, double ph) : log_mag(lm), phase(ph) {}

    static LogComplex zero() { return {}; }
    static LogComplex one() { return {0.0, 0.0}; }
    static LogComplex from_complex(std::complex<double> z);
    // exp(w) without evaluating it: log_mag = Re w, phase = Im w.
    static LogComplex exp_of(std::complex<double> w) { return {w.real(), w.imag()}; }

    bool is_zero() const { return log_mag == -std::numeric_limits<double>::infinity(); }
    std::complex<double> to_complex() const;
    std::complex<double> log() const { return {log_mag, phase}; }

    LogComplex conj() const { return {log_mag, -phase}; }
    LogComplex inverse() const { return {-log_mag, -phase}; }
    LogComplex pow(double k) const { return {k * log_mag, k * phase}; }

    LogComplex& operator*=(const LogComplex& o) {
        log_mag += o.log_mag;
        phase += o.phase;
        return *this;
    }
    LogComplex& operator/=(const LogComplex& o) {
        log_mag -= o.log_mag;
        phase -= o.phase;
        return *this;
    }
};

inline LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
inline LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }

// Sum in the log domain; the result phase is the principal argument.
LogComplex operator+(const LogComplex& a, const LogComplex& b);
LogComplex operator-(const LogComplex& a, const LogComplex& b);

// Relative distance |a - b| / |b| evaluated without leaving the log domain.
double rel_diff(const LogComplex& a, const LogComplex& b);

}  // namespace charpoly
