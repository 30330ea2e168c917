#include "charpoly/matrix_integrals.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "charpoly/ensembles.hpp"
#include "charpoly/montecarlo.hpp"
#include "charpoly/quadrature.hpp"
#include "charpoly/rng.hpp"
#include "charpoly/specfun.hpp"

namespace charpoly {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

double lfp(int a, int b) { return specfun::log_factorial_product(a, b); }

void check_square_hermitian(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("matrix must be square and non-empty");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("matrix is not Hermitian");
}

void check_distinct(const std::vector<double>& x, const char* what) {
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (std::abs(x[i] - x[j]) < 1e-10) throw DegenerateInputError(std::string(what) + ": coincident values");
}

// det[(i/2) Q]^{power} e^{(i/2) mu Tr Q} for eigenvalues q > 0, in log form.
LogComplex is_second_tail(const std::vector<double>& q, double power, cd mu) {
    cd s = 0.0;
    double tr = 0.0;
    for (double x : q) {
        s += power * cd(std::log(x / 2.0), M_PI / 2.0);
        tr += x;
    }
    s += 0.5 * I * mu * tr;
    return LogComplex::exp_of(s);
}

}  // namespace

PositiveDefiniteHermitian::PositiveDefiniteHermitian(Eigen::MatrixXcd m) : m_(std::move(m)) {
    check_square_hermitian(m_);
    ev_ = hermitian_eigenvalues(m_);
    if (!(ev_.front() > 0.0)) throw std::invalid_argument("matrix is not positive definite");
}

double PositiveDefiniteHermitian::log_det() const {
    double s = 0.0;
    for (double e : ev_) s += std::log(e);
    return s;
}

Eigen::MatrixXcd SignatureMatrix::matrix() const {
    if (n < 1) throw std::invalid_argument("SignatureMatrix: n must be >= 1");
    Eigen::MatrixXcd L = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
    L.bottomRightCorner(n, n) *= -1.0;
    return L;
}

PositiveDefiniteHermitian random_positive_definite(int dim, RngSeed seed, double eps) {
    Rng rng(seed);
    Eigen::MatrixXcd A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double re = rng.normal(), im = rng.normal();
            A(i, j) = cd(re, im) / std::sqrt(2.0);
        }
    Eigen::MatrixXcd Q = A.adjoint() * A + eps * Eigen::MatrixXcd::Identity(dim, dim);
    Q = 0.5 * (Q + Q.adjoint()).eval();
    return PositiveDefiniteHermitian(Q);
}

LogComplex ingham_siegel_first_value(int p, const PositiveDefiniteHermitian& Q) {
    if (p < 0) throw std::invalid_argument("ingham_siegel_first_value: p must be >= 0");
    const int n = Q.dim();
    const double lm = 0.5 * n * (n - 1) * std::log(2 * M_PI) + lfp(p, p + n - 1) - (p + n) * Q.log_det();
    return {lm, 0.0};
}

LogComplex ingham_siegel_second_value(int N, cd mu, const Eigen::MatrixXcd& Q) {
    check_square_hermitian(Q);
    const int n = static_cast<int>(Q.rows());
    if (N < n) throw std::invalid_argument("precondition: N >= n required");
    if (!(mu.imag() > 0.0)) throw std::invalid_argument("ingham_siegel_second_value: need Im mu > 0");
    const std::vector<double> q = hermitian_eigenvalues(Q);
    if (!(q.front() > 0.0)) return LogComplex::zero();
    double lm = 0.5 * n * (n + 1) * std::log(2 * M_PI);
    for (int j = N - n + 1; j <= N; ++j) lm -= specfun::log_gamma(j);
    const LogComplex C{lm, 0.5 * M_PI * n * n};
    return C * is_second_tail(q, N - n, mu);
}

LogComplex ingham_siegel_second_realsym_value(int N, cd mu, const Eigen::MatrixXd& Q) {
    if (Q.rows() != Q.cols() || Q.rows() == 0) throw std::invalid_argument("matrix must be square and non-empty");
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, Q.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("matrix is not symmetric");
    const int n = static_cast<int>(Q.rows());
    if (2 * N < n + 1) throw std::invalid_argument("precondition: N >= (n+1)/2 required");
    if (!(mu.imag() > 0.0)) throw std::invalid_argument("ingham_siegel_second_realsym_value: need Im mu > 0");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q, Eigen::EigenvaluesOnly);
    std::vector<double> q(es.eigenvalues().data(), es.eigenvalues().data() + n);
    if (!(q.front() > 0.0)) return LogComplex::zero();
    double lm = n * std::log(2.0) + 0.25 * n * (n + 3) * std::log(M_PI);
    for (int k = 0; k < n; ++k) lm -= specfun::log_gamma(N - 0.5 * k);
    const LogComplex C{lm, 0.25 * M_PI * n * (n + 1)};
    return C * is_second_tail(q, N - 0.5 * (n + 1), mu);
}

double selberg_value(int n, double t) {
    if (n < 1) throw std::invalid_argument("selberg_value: n must be >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("selberg_value: t must be > 0");
    return std::exp(0.5 * n * std::log(2 * M_PI) - 0.5 * n * n * std::log(t) + lfp(1, n));
}

LogComplex aux_identity_value(int n, int p, cd beta) {
    if (n < 1) throw std::invalid_argument("aux_identity_value: n must be >= 1");
    if (p < 0) throw std::invalid_argument("aux_identity_value: p must be >= 0");
    if (!(beta.real() > 0.0)) throw std::domain_error("aux_identity_value: need Re beta > 0");
    return LogComplex{lfp(1, n) + lfp(p, p + n - 1), 0.0} * LogComplex::from_complex(beta).pow(-n * (n + p));
}

double vandermonde(const std::vector<double>& x) {
    double v = 1.0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j) v *= x[j] - x[i];
    return v;
}

cd hciz_value(const std::vector<double>& lambda, const std::vector<double>& q, cd beta) {
    const int n = static_cast<int>(lambda.size());
    if (n < 1 || q.size() != lambda.size()) throw std::invalid_argument("hciz_value: size mismatch");
    if (beta == 0.0) throw std::invalid_argument("hciz_value: beta must be nonzero");
    check_distinct(lambda, "hciz_value lambda");
    check_distinct(q, "hciz_value q");
    Eigen::MatrixXcd E(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) E(k, l) = std::exp(beta * lambda[k] * q[l]);
    const double fact = std::exp(lfp(1, n - 1));
    return fact * std::pow(beta, -0.5 * n * (n - 1)) * E.determinant() / (vandermonde(lambda) * vandermonde(q));
}

MomentEstimate hciz_haar_mc(const std::vector<double>& lambda, const std::vector<double>& q, cd beta,
                            std::uint64_t samples, RngSeed seed) {
    const int n = static_cast<int>(lambda.size());
    if (n < 1 || q.size() != lambda.size()) throw std::invalid_argument("hciz_haar_mc: size mismatch");
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed);
    std::vector<cd> v(samples);
    for (auto& x : v) {
        const Eigen::MatrixXcd u = sample_haar_unitary(n, rng);
        // Tr u diag(q) u^dag diag(lambda) = sum_{k,l} lambda_k q_l |u_kl|^2
        double tr = 0.0;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) tr += lambda[k] * q[l] * std::norm(u(k, l));
        x = std::exp(beta * tr);
    }
    MomentEstimate e = aggregate(v, Estimator::plain_mean);
    e.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

double cauchy_determinant_value(const std::vector<double>& q1, const std::vector<double>& q2) {
    const size_t n = q1.size();
    if (n == 0 || q2.size() != n) throw std::invalid_argument("cauchy_determinant_value: size mismatch");
    double num = 1.0, den = 1.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) num *= (q1[j] - q1[i]) * (q2[i] - q2[j]);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const double d = q1[i] - q2[j];
            if (std::abs(d) < 1e-10) throw DegenerateInputError("cauchy_determinant_value: q1_i = q2_j");
            den *= d;
        }
    return num / den;
}

LogComplex coset_integral_value(const SpectralPoint& sp, const std::vector<double>& q1, const std::vector<double>& q2,
                                int N) {
    const int n = static_cast<int>(q1.size());
    if (n == 0 || q2.size() != q1.size()) throw std::invalid_argument("coset_integral_value: size mismatch");
    if (N < 1) throw std::invalid_argument("invalid dimension: N must be >= 1");
    for (double x : q1)
        if (!(x > 0.0)) throw std::invalid_argument("coset_integral_value: q1 must be positive");
    for (double x : q2)
        if (!(x < 0.0)) throw std::invalid_argument("coset_integral_value: q2 must be negative");
    const cd mu1 = sp.mu1(), mu2c = sp.mu2_conj();
    LogComplex v = LogComplex::from_complex(-I * (mu1 - mu2c)).pow(-n * n);
    double lden = 0.0;
    for (double a : q1)
        for (double b : q2) lden += std::log(a - b);
    cd ex = 0.0;
    for (double a : q1) ex += I * static_cast<double>(N) * mu1 * a;
    for (double b : q2) ex += I * static_cast<double>(N) * mu2c * b;
    return v * LogComplex{-lden, 0.0} * LogComplex::exp_of(ex);
}

QlDecomposition ql_spectral_decomposition(const PositiveDefiniteHermitian& Q, const SignatureMatrix& L) {
    if (Q.dim() != 2 * L.n) throw std::invalid_argument("ql_spectral_decomposition: need dim Q = 2n");
    const Eigen::MatrixXcd Lm = L.matrix();
    const Eigen::MatrixXcd QL = Q.matrix() * Lm;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(QL, false);
    if (ces.info() != Eigen::Success) throw std::runtime_error("ql_spectral_decomposition: eigensolver failed");
    QlDecomposition out;
    for (int j = 0; j < QL.rows(); ++j) {
        const cd e = ces.eigenvalues()(j);
        out.max_imag = std::max(out.max_imag, std::abs(e.imag()));
        out.eigenvalues.push_back(e.real());
    }
    if (out.max_imag > 1e-9) throw ContractViolation("Q L has an eigenvalue with nonzero imaginary part");
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    for (double e : out.eigenvalues) (e > 0 ? out.n_positive : out.n_negative)++;

    // With S = Q^{1/2}, S L S v = q v gives Q L (S v) = q (S v) and
    // (S v)^dag L (S v) = q, so t = S v / sqrt|q|.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> qs(Q.matrix());
    const Eigen::MatrixXcd S = qs.operatorSqrt();
    Eigen::MatrixXcd SLS = S * Lm * S;
    SLS = 0.5 * (SLS + SLS.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(SLS);
    out.T = S * hs.eigenvectors();
    for (int j = 0; j < out.T.cols(); ++j) out.T.col(j) /= std::sqrt(std::abs(hs.eigenvalues()(j)));
    const Eigen::MatrixXcd G = out.T.adjoint() * Lm * out.T;
    for (int i = 0; i < G.rows(); ++i)
        for (int j = 0; j < G.cols(); ++j) {
            const double target = i == j ? (hs.eigenvalues()(j) > 0 ? 1.0 : -1.0) : 0.0;
            out.residual = std::max(out.residual, std::abs(G(i, j) - target));
        }
    return out;
}

MomentEstimate hs_route_k2_n1(int N, const SpectralPoint& sp, const QuadOptions& quad) {
    if (N < 2) throw std::invalid_argument("precondition: N >= 2 required");
    const auto t0 = std::chrono::steady_clock::now();
    const double mu = sp.mu(), dN = N;
    const cd c(sp.delta(), -0.5 * sp.omega());
    // q = N s; each axis carries s^{N-1} e^{N(+-i mu s - s^2/2 - c s)}.
    auto axis = [=](double sign) {
        return [=](double s) -> cd {
            if (s <= 0.0) return {-INFINITY, 0.0};
            return (dN - 1) * std::log(s) + dN * (sign * I * mu * s - 0.5 * s * s - c * s);
        };
    };
    SeparableIntegrand f;
    f.log_factor = {axis(1.0), axis(-1.0)};
    f.coupling = [c](const double* s) { return s[0] + s[1] + 2.0 * c; };
    QuadratureSpec spec;
    spec.tolerance = quad.tolerance;
    spec.max_doublings = quad.max_doublings >= 1 ? quad.max_doublings : 3;
    spec.exec = quad.exec;
    const double drop = 46.0 * quad.radius_scale * quad.radius_scale;
    for (double sign : {1.0, -1.0}) {
        auto la = axis(sign);
        const Interval iv = find_support([&](double s) { return la(s).real(); }, 0.0, 3.0, true, false, drop);
        DimSpec ds;
        ds.a = iv.lo;
        ds.b = iv.hi;
        const double freq = dN * (sign * mu + 0.5 * sp.omega());
        ds.nodes = std::max(quad.nodes > 0 ? quad.nodes : 200, oscillation_nodes(freq, iv.hi - iv.lo));
        spec.dims.push_back(ds);
    }
    const QuadratureResult r = integrate_separable(f, spec);
    // K (-1/c) N^{2N} with K = -1/(2 Gamma(N)^2)
    const LogComplex C =
        LogComplex{2.0 * dN * std::log(dN) - std::log(2.0) - 2.0 * specfun::log_gamma(dN), 0.0} /
        LogComplex::from_complex(c);
    MomentEstimate e;
    e.method = Method::quadrature;
    e.value = r.value.is_zero() ? LogComplex::zero() : r.value * C;
    e.rel_error = r.est_rel_error;
    e.std_error = e.value.is_zero() ? 0.0 : r.est_rel_error * std::exp(e.value.log_mag);
    e.n_samples = r.nodes_used;
    e.converged = r.converged;
    if (!r.converged) e.warnings.push_back("quadrature did not reach the requested tolerance");
    e.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

}  // namespace charpoly
