#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "charpoly/log_complex.hpp"

namespace charpoly {

// Execution policy for the data-parallel kernels. The serial path is the
// reference implementation; both must produce bit-identical results.
enum class Exec { serial, parallel };

struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// μ₁ = μ + ω/2 + iδ and μ₂* = μ − ω/2 − iδ.
class SpectralPoint {
public:
    SpectralPoint(double mu, double omega, double delta) : mu_(mu), omega_(omega), delta_(delta) {
        if (!(delta > 0.0)) throw std::invalid_argument("SpectralPoint: delta must be > 0");
    }
    // Positive moments need no regularization.
    static SpectralPoint unregularized(double mu, double omega, double delta) {
        SpectralPoint sp(mu, omega, 1.0);
        if (delta < 0.0) throw std::invalid_argument("SpectralPoint: delta must be >= 0");
        sp.delta_ = delta;
        return sp;
    }

    double mu() const { return mu_; }
    double omega() const { return omega_; }
    double delta() const { return delta_; }
    std::complex<double> mu1() const { return {mu_ + omega_ / 2, delta_}; }
    std::complex<double> mu2_conj() const { return {mu_ - omega_ / 2, -delta_}; }

private:
    double mu_, omega_, delta_;
};

enum class Method { mc, quadrature, asymptotic, closed_form };
inline std::string to_string(Method m) {
    switch (m) {
        case Method::mc: return "mc";
        case Method::quadrature: return "quadrature";
        case Method::asymptotic: return "asymptotic";
        case Method::closed_form: return "closed_form";
    }
    return "unknown";
}

struct MomentEstimate {
    LogComplex value;
    double std_error = 0.0;  // MC: standard error; quadrature: absolute error estimate
    double rel_error = 0.0;  // quadrature: relative change at the last refinement
    std::uint64_t n_samples = 0;  // samples or quadrature nodes
    Method method = Method::closed_form;
    double runtime_ms = 0.0;
    bool converged = true;
    std::vector<std::string> warnings;

    std::complex<double> complex() const { return value.to_complex(); }
};

}  // namespace charpoly
