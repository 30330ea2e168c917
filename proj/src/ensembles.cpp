#include "charpoly/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace charpoly {

namespace {
void check_dim(int N) {
    if (N < 1) throw std::invalid_argument("invalid dimension: N must be >= 1");
}
}  // namespace

void sample_gue(int N, Rng& rng, HermitianMatrix& H) {
    check_dim(N);
    H.resize(N, N);
    const double sd_diag = 1.0 / std::sqrt(static_cast<double>(N));
    const double sd_off = 1.0 / std::sqrt(2.0 * N);
    for (int i = 0; i < N; ++i) {
        H(i, i) = sd_diag * rng.normal();
        for (int j = i + 1; j < N; ++j) {
            const double re = sd_off * rng.normal();
            const double im = sd_off * rng.normal();
            H(i, j) = {re, im};
            H(j, i) = {re, -im};
        }
    }
}

HermitianMatrix sample_gue(int N, RngSeed seed) {
    Rng rng(seed);
    HermitianMatrix H;
    sample_gue(N, rng, H);
    return H;
}

void sample_chiral(int N, Rng& rng, ChiralBlock& J) {
    check_dim(N);
    J.resize(N, N);
    const double sd = 1.0 / std::sqrt(2.0 * N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) {
            const double re = sd * rng.normal();
            J(i, j) = {re, sd * rng.normal()};
        }
}

ChiralBlock sample_chiral(int N, RngSeed seed) {
    Rng rng(seed);
    ChiralBlock J;
    sample_chiral(N, rng, J);
    return J;
}

Eigen::MatrixXcd sample_haar_unitary(int n, Rng& rng) {
    check_dim(n);
    Eigen::MatrixXcd G(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double re = rng.normal();
            G(i, j) = {re, rng.normal()};
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ();
    const Eigen::MatrixXcd& R = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const std::complex<double> r = R(j, j);
        const double a = std::abs(r);
        if (a > 0.0) Q.col(j) *= r / a;
    }
    return Q;
}

Eigen::MatrixXcd sample_haar_unitary(int n, RngSeed seed) {
    Rng rng(seed);
    return sample_haar_unitary(n, rng);
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& H) {
    if (H.rows() != H.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::logic_error("hermitian_eigenvalues: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

LogComplex log_char_poly_from_eigenvalues(const std::vector<double>& eigenvalues,
                                          std::complex<double> mu) {
    LogComplex acc = LogComplex::one();
    for (double lam : eigenvalues) {
        const std::complex<double> f = mu - lam;
        if (f == 0.0) return LogComplex::zero();
        acc *= LogComplex{std::log(std::abs(f)), std::arg(f)};
    }
    // |μ − λ| ≥ Im μ for real λ.
    if (mu.imag() > 0.0) {
        const double bound = static_cast<double>(eigenvalues.size()) * std::log(mu.imag());
        if (acc.log_mag < bound - 1e-10 * (1.0 + std::abs(bound)))
            throw std::logic_error("log_char_poly: eigenvalue-distance bound violated");
    }
    return acc;
}

LogComplex log_char_poly(const HermitianMatrix& H, std::complex<double> mu) {
    return log_char_poly_from_eigenvalues(hermitian_eigenvalues(H), mu);
}

}  // namespace charpoly
