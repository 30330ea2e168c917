#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "charpoly/log_complex.hpp"
#include "charpoly/types.hpp"

namespace charpoly {

enum class Estimator { plain_mean, median_of_means };

struct McConfig {
    std::uint64_t n_samples = 100000;
    RngSeed seed{};
    std::uint64_t chunk_size = 4096;  // samples per derived RNG stream
    Estimator estimator = Estimator::median_of_means;
    int groups = 32;
    Exec exec = Exec::parallel;
    // Test hook: replace every sampled matrix by the zero matrix.
    bool point_mass = false;
};

// Mean (or median of group means) of the samples with its standard error.
MomentEstimate aggregate(const std::vector<std::complex<double>>& samples, Estimator estimator,
                         int groups = 32);

// Same, for samples held in log form. Samples are rescaled by the largest
// magnitude before summation.
MomentEstimate aggregate_log(const std::vector<LogComplex>& samples, Estimator estimator,
                             int groups = 32);

// <Z(mu1)^{-n}>
MomentEstimate mc_k1(int N, int n, const SpectralPoint& sp, const McConfig& cfg);
// <[Z(mu1) Z(mu2*)]^{-n}>
MomentEstimate mc_k2(int N, int n, const SpectralPoint& sp, const McConfig& cfg);
// <Z(mu1)^{n}>; delta may be zero.
MomentEstimate mc_positive_moment(int N, int n, const SpectralPoint& sp, const McConfig& cfg);
// <[Z(mu1) Z(mu2*)]^{n}>
MomentEstimate mc_positive_pair(int N, int n, const SpectralPoint& sp, const McConfig& cfg);

struct GeneratingPoint {
    std::complex<double> mu1b, mu2b_conj;  // need Im mu1b > 0 > Im mu2b_conj
    std::complex<double> mu1f, mu2f;

    // mu1b = mu + omega_b/2 + i delta, mu2b* = mu - omega_b/2 - i delta,
    // mu1f = mu + omega_f/2, mu2f = mu - omega_f/2.
    static GeneratingPoint local(double mu, double omega_b, double omega_f, double delta);
};

// <Z(mu1f) Z(mu2f) / (Z(mu1b) Z(mu2b*))>
MomentEstimate mc_generating_function(int N, const GeneratingPoint& g, const McConfig& cfg);

// <det(m^2 + J^dag J)^{-n}>, the negative moment of the chiral block determinant.
MomentEstimate mc_chiral_moment(int N, int n, double m, const McConfig& cfg);
// <det(m_f^2 + J^dag J) / det(m_b^2 + J^dag J)>
MomentEstimate mc_chiral_generating(int N, double m_f, double m_b, const McConfig& cfg);

}  // namespace charpoly
