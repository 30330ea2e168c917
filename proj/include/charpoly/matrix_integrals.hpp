#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "charpoly/exact_moments.hpp"
#include "charpoly/log_complex.hpp"
#include "charpoly/types.hpp"

namespace charpoly {

class DegenerateInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Hermitian matrix with all eigenvalues > 0, checked on construction.
class PositiveDefiniteHermitian {
public:
    explicit PositiveDefiniteHermitian(Eigen::MatrixXcd m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    const std::vector<double>& eigenvalues() const { return ev_; }
    double log_det() const;

private:
    Eigen::MatrixXcd m_;
    std::vector<double> ev_;
};

// L = diag(1_n, -1_n).
struct SignatureMatrix {
    int n = 1;
    Eigen::MatrixXcd matrix() const;
};

// A^dag A + eps 1 with A complex Ginibre.
PositiveDefiniteHermitian random_positive_definite(int dim, RngSeed seed, double eps = 0.01);

// int_{F>0} dF det F^p e^{-Tr F Q}
//   = (2 pi)^{n(n-1)/2} p! (p+1)! ... (p+n-1)! det Q^{-(p+n)}.
// dF counts dF_ij dF_ij^* = 2 dRe dIm for each off-diagonal pair.
LogComplex ingham_siegel_first_value(int p, const PositiveDefiniteHermitian& Q);

// int dF e^{(i/2) Tr F Q} det(F - mu)^{-N} over Hermitian F, Im mu > 0:
//   i^{n^2} (2 pi)^{n(n+1)/2} / prod_{j=N-n+1}^N Gamma(j) * det[(i/2) Q]^{N-n} e^{(i/2) mu Tr Q},
// and exactly zero if Q has a non-positive eigenvalue. Q only needs to be Hermitian.
LogComplex ingham_siegel_second_value(int N, std::complex<double> mu, const Eigen::MatrixXcd& Q);

// Real symmetric analogue:
//   2^n i^{n(n+1)/2} pi^{n(n+3)/4} / prod_{k=0}^{n-1} Gamma(N - k/2)
//   * det[(i/2) Q]^{N-(n+1)/2} e^{(i/2) mu Tr Q}.
LogComplex ingham_siegel_second_realsym_value(int N, std::complex<double> mu, const Eigen::MatrixXd& Q);

// int d^n xi Delta^2(xi) e^{-t sum xi^2 / 2} = (2 pi)^{n/2} t^{-n^2/2} prod_{j=1}^n j!
double selberg_value(int n, double t);

// int_{q>0} d^n q Delta^2(q) prod q^p e^{-beta sum q} = beta^{-n(n+p)} prod_{j=1}^n j! prod_{j=p}^{p+n-1} j!
LogComplex aux_identity_value(int n, int p, std::complex<double> beta);

// Delta(x) = prod_{i<j} (x_j - x_i).
double vandermonde(const std::vector<double>& x);

// int dmu(u) e^{beta Tr u diag(q) u^-1 diag(lambda)} over normalized Haar U(n).
std::complex<double> hciz_value(const std::vector<double>& lambda, const std::vector<double>& q,
                                std::complex<double> beta);

// Haar Monte Carlo estimate of the same integral (oracle for hciz_value).
MomentEstimate hciz_haar_mc(const std::vector<double>& lambda, const std::vector<double>& q, std::complex<double> beta,
                            std::uint64_t samples, RngSeed seed);

// det[1/(q1_i - q2_j)] = prod_{i<j} (q1_j - q1_i)(q2_i - q2_j) / prod_{i,j} (q1_i - q2_j).
double cauchy_determinant_value(const std::vector<double>& q1, const std::vector<double>& q2);

// Closed form of the U(n,n)/U(n)xU(n) coset integral,
//   [-i(mu1 - mu2*)]^{-n^2} / prod_{k,l} (q1_k - q2_l) * e^{i N Tr(mu1 q1 + mu2* q2)},
// without the group-volume constant. At n = 1 the integral over
// (psi, phi) with measure sinh(2 psi) dpsi dphi equals 2 pi / N times this.
LogComplex coset_integral_value(const SpectralPoint& sp, const std::vector<double>& q1, const std::vector<double>& q2,
                                int N);

struct QlDecomposition {
    std::vector<double> eigenvalues;  // of Q L, ascending
    Eigen::MatrixXcd T;               // columns ordered like eigenvalues
    int n_positive = 0;
    int n_negative = 0;
    double max_imag = 0.0;   // largest |Im| seen in the eigenvalues of Q L
    double residual = 0.0;   // max entry of |T^dag L T - diag(sgn q)|
};

// Eigenvalues of the non-Hermitian product Q L (from a general complex
// eigensolver) and a transform T with T^dag L T = diag(sgn q_j).
// Throws ContractViolation if an eigenvalue has |Im| > 1e-9.
QlDecomposition ql_spectral_decomposition(const PositiveDefiniteHermitian& Q, const SignatureMatrix& L);

// <[Z(mu1) Z(mu2*)]^{-1}> from the Hubbard-Stratonovich 2D representation
//   K (-1/c) int_{q>0} (q1 q2)^{N-1} [(q1+q2)/N + 2c] e^{i mu (q1-q2) - (q1^2+q2^2)/(2N) - c (q1+q2)},
// c = delta - i omega / 2, K = -1 / (2 Gamma(N)^2). N >= 2.
MomentEstimate hs_route_k2_n1(int N, const SpectralPoint& sp, const QuadOptions& quad = {});

}  // namespace charpoly
