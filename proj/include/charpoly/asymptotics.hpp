#pragma once

#include <complex>

#include "charpoly/exact_moments.hpp"
#include "charpoly/types.hpp"

namespace charpoly {

// rho(mu) = sqrt(4 - mu^2) / (2 pi) on |mu| <= 2.
double semicircle_density(double mu);
double semicircle_cdf(double x);

struct SaddlePair {
    std::complex<double> q_plus, q_minus;
};

// Roots of q - i mu - 1/q = 0, q = (i mu +- sqrt(4 - mu^2)) / 2, for |mu| < 2.
SaddlePair saddle_points(double mu);

// Large-N form of <Z(mu1)^{-n}>. delta enters through omega -> omega + 2 i delta.
MomentEstimate k1_asymptotic(int N, int n, const SpectralPoint& sp);

// K1(mu1) K1(mu2*), with K1(mu2*) the conjugate of K1 at mu2 = mu - omega/2 + i delta.
MomentEstimate k1_pair_asymptotic(int N, int n, const SpectralPoint& sp);

// Large-N form of <[Z(mu1) Z(mu2*)]^{-n}>.
MomentEstimate k2_asymptotic(int N, int n, const SpectralPoint& sp);

// [2 pi rho(mu) / (-i (mu1 - mu2*))]^{n^2} with mu1 - mu2* = omega + 2 i delta.
std::complex<double> moment_ratio_limit(int n, double mu, double omega, double delta);

// int_{Q>0} e^{-(x/2) Tr(Q + Q^{-1})} det Q^{-n} in eigenvalue coordinates
// (squared Vandermonde, no group-volume constant). n = 1 gives 2 K_0(x).
MomentEstimate chiral_limit_moment(int n, double x, const QuadOptions& quad = {});

// x_f I_1(2 x_f) K_0(2 x_b) + x_b I_0(2 x_f) K_1(2 x_b)
double chiral_quenched_bessel(double x_f, double x_b);

// [e^{i a (w + f)} (w - f)^2 - e^{i a (w - f)} (w + f)^2] / (w f) with
// a = N pi rho(mu), w = omega_b + 2 i delta, f = omega_f. The omega_f = 0
// limit is evaluated in closed form.
std::complex<double> generating_asymptotic(int N, double mu, double omega_b, double omega_f, double delta = 0.0);

}  // namespace charpoly
