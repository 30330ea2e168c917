#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "charpoly/log_complex.hpp"
#include "charpoly/rng.hpp"
#include "charpoly/types.hpp"

namespace charpoly {

using HermitianMatrix = Eigen::MatrixXcd;
using ChiralBlock = Eigen::MatrixXcd;

// Density ∝ exp(−(N/2) Tr H²). Writing Tr H² = Σ_i H_ii² + 2 Σ_{i<j} (Re² + Im²)
// gives Var(H_ii) = 1/N and Var(Re H_ij) = Var(Im H_ij) = 1/(2N).
HermitianMatrix sample_gue(int N, RngSeed seed);
void sample_gue(int N, Rng& rng, HermitianMatrix& out);

// Density ∝ exp(−N Tr J†J): Re and Im of each entry have variance 1/(2N).
ChiralBlock sample_chiral(int N, RngSeed seed);
void sample_chiral(int N, Rng& rng, ChiralBlock& out);

// Haar unitary from the QR factorization of a complex Ginibre matrix, with
// the diagonal phases of R moved into Q.
Eigen::MatrixXcd sample_haar_unitary(int n, RngSeed seed);
Eigen::MatrixXcd sample_haar_unitary(int n, Rng& rng);

// Ascending eigenvalues. Throws on input that is not Hermitian to 1e-12.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& H);

// Σ_j log(μ − λ_j) accumulated factor by factor. Returns log_mag = −∞ when μ
// coincides with an eigenvalue.
LogComplex log_char_poly_from_eigenvalues(const std::vector<double>& eigenvalues,
                                          std::complex<double> mu);
LogComplex log_char_poly(const HermitianMatrix& H, std::complex<double> mu);

}  // namespace charpoly
