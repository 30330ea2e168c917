#pragma once

#include <complex>

#include "charpoly/montecarlo.hpp"
#include "charpoly/quadrature.hpp"
#include "charpoly/types.hpp"

namespace charpoly {

// Quadrature controls shared by the exact evaluators. Each dimension is
// truncated to the interval where its 1D factor exceeds exp(-46 * radius_scale^2)
// of its peak; nodes == 0 picks 200 per dimension for d <= 2, 64 for d = 3 and 40 for d = 4,
// raised further by the oscillation guard.
struct QuadOptions {
    int nodes = 0;
    double tolerance = 1e-10;
    int max_doublings = -1;  // -1: 3 for d <= 2, 2 for d = 3, 1 for d = 4
    double radius_scale = 1.0;
    Exec exec = Exec::parallel;
};

struct MomentParams {
    int N = 4;
    int n = 1;
    SpectralPoint sp{0.0, 0.0, 1.0};
    QuadOptions quad{};
};

// Monic polynomial family for the determinant route.
enum class MonicFamily { monomial, shifted };  // q^j or (q - 1)^j

// <Z(mu1)^{-n}> as an n-fold half-line integral with the squared Vandermonde.
MomentEstimate k1_negative_exact(const MomentParams& p);

// Same quantity as det[Phi_jk], Phi_jk = int_0^inf q^{N-n} pi_j pi_k e^{N(i mu1 q - q^2/2)} dq.
MomentEstimate k1_negative_determinant(const MomentParams& p, MonicFamily family = MonicFamily::monomial);

// Constant c with <Z^{-n}> = c det[Phi], from the limit det[Phi] -> mu1^{-nN} / c
// at large |mu1|: c = (-iN)^{nN} / (prod_{j<n} j! prod_{j=N-n}^{N-1} j!).
LogComplex k1_determinant_constant(int N, int n);

// <Z(mu1)^{n}> as an n-fold full-line integral; delta = 0 allowed.
MomentEstimate k1_positive_exact(const MomentParams& p);

// <[Z(mu1) Z(mu2*)]^{-n}>, n in {1, 2}.
MomentEstimate k2_negative_exact(const MomentParams& p);

// <[Z(mu1) Z(mu2*)]^{n}>, n in {1, 2}. At mu1 = mu2* this is k1_positive_exact of order 2n.
MomentEstimate k2_positive_exact(const MomentParams& p);

// <det(m^2 + J^dag J)^{-n}>, n in {1, 2}.
MomentEstimate chiral_negative_exact(int N, int n, double m, const QuadOptions& quad = {});

// <Z(mu1f) Z(mu2f) / (Z(mu1b) Z(mu2b*))>. The overall constant is fixed once
// per N at a point with equal fermionic and bosonic parameters. N >= 3.
MomentEstimate generating_exact(int N, const GeneratingPoint& g, const QuadOptions& quad = {});

// Uncalibrated log of the generating-function integral (exposed for tests).
LogComplex generating_raw(int N, const GeneratingPoint& g, const QuadOptions& quad, QuadratureResult* info = nullptr);

// <det(m_f^2 + J^dag J) / det(m_b^2 + J^dag J)> from the 2D Bessel
// representation with x = N m, calibrated once per N at m_f = m_b.
MomentEstimate chiral_generating_exact(int N, double m_f, double m_b, const QuadOptions& quad = {});

// Uncalibrated 2D Bessel integral including the exp(-x_f^2/N) prefactor.
LogComplex chiral_generating_raw(int N, double m_f, double m_b, const QuadOptions& quad,
                                 QuadratureResult* info = nullptr);

// Closed form of the chiral calibration constant, 2 N^{2N+1} / ((N-1)!)^2.
LogComplex chiral_generating_constant(int N);

}  // namespace charpoly
