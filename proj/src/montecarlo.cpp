#include "charpoly/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "charpoly/ensembles.hpp"
#include "charpoly/rng.hpp"

namespace charpoly {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_config(const McConfig& cfg) {
    if (cfg.n_samples < 100) throw std::invalid_argument("McConfig: n_samples must be >= 100");
    if (cfg.chunk_size < 1) throw std::invalid_argument("McConfig: chunk_size must be >= 1");
    if (cfg.groups < 2) throw std::invalid_argument("McConfig: groups must be >= 2");
}

void check_sizes(int N, int n) {
    if (N < 1) throw std::invalid_argument("invalid dimension: N must be >= 1");
    if (n < 1) throw std::invalid_argument("moment order n must be >= 1");
}

// Fills out[s] = per_sample(rng, s) chunk by chunk. Chunk c draws from the
// stream derive_seed(seed, c) regardless of which thread runs it.
template <class Worker>
std::vector<LogComplex> run_chunks(const McConfig& cfg, const Worker& make_worker) {
    const std::uint64_t S = cfg.n_samples;
    const std::uint64_t cs = cfg.chunk_size;
    const std::int64_t n_chunks = static_cast<std::int64_t>((S + cs - 1) / cs);
    std::vector<LogComplex> out(S);
    std::vector<std::string> errors(n_chunks);

    auto chunk = [&](std::int64_t c) {
        try {
            Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(c)));
            auto worker = make_worker();
            const std::uint64_t lo = static_cast<std::uint64_t>(c) * cs;
            const std::uint64_t hi = std::min(S, lo + cs);
            for (std::uint64_t s = lo; s < hi; ++s) out[s] = worker(rng);
        } catch (const std::exception& e) {
            errors[c] = e.what();
        }
    };

    if (cfg.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c = 0; c < n_chunks; ++c) chunk(c);
    } else {
        for (std::int64_t c = 0; c < n_chunks; ++c) chunk(c);
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error(e);
    return out;
}

// Eigenvalues of a fresh GUE sample (or of the zero matrix under the hook).
class GueSpectrum {
public:
    GueSpectrum(int N, bool point_mass) : N_(N), point_mass_(point_mass), ev_(N, 0.0) {}

    const std::vector<double>& draw(Rng& rng) {
        if (point_mass_) return ev_;
        sample_gue(N_, rng, H_);
        es_.compute(H_, Eigen::EigenvaluesOnly);
        if (es_.info() != Eigen::Success) throw std::runtime_error("GUE eigensolver failed");
        for (int i = 0; i < N_; ++i) ev_[i] = es_.eigenvalues()(i);
        return ev_;
    }

private:
    int N_;
    bool point_mass_;
    std::vector<double> ev_;
    HermitianMatrix H_;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_;
};

// Eigenvalues of J^dag J for a fresh chiral sample.
class ChiralSpectrum {
public:
    ChiralSpectrum(int N, bool point_mass) : N_(N), point_mass_(point_mass), ev_(N, 0.0) {}

    const std::vector<double>& draw(Rng& rng) {
        if (point_mass_) return ev_;
        sample_chiral(N_, rng, J_);
        W_.noalias() = J_.adjoint() * J_;
        es_.compute(W_, Eigen::EigenvaluesOnly);
        if (es_.info() != Eigen::Success) throw std::runtime_error("chiral eigensolver failed");
        for (int i = 0; i < N_; ++i) ev_[i] = std::max(0.0, es_.eigenvalues()(i));
        return ev_;
    }

private:
    int N_;
    bool point_mass_;
    std::vector<double> ev_;
    ChiralBlock J_;
    Eigen::MatrixXcd W_;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_;
};

double chiral_log_det(const std::vector<double>& s, double m) {
    double acc = 0.0;
    for (double v : s) acc += std::log(m * m + v);
    return acc;
}

void warn_small_delta(MomentEstimate& est, int N, double delta) {
    if (delta < 0.5 / N) {
        std::ostringstream os;
        os << "delta = " << delta << " < 0.5/N: MC error bars are unreliable in this regime";
        est.warnings.push_back(os.str());
    }
}

MomentEstimate finish(const std::vector<LogComplex>& vals, const McConfig& cfg, Clock::time_point t0) {
    MomentEstimate est = aggregate_log(vals, cfg.estimator, cfg.groups);
    est.runtime_ms = elapsed_ms(t0);
    return est;
}

}  // namespace

MomentEstimate aggregate(const std::vector<std::complex<double>>& v, Estimator estimator, int groups) {
    if (v.empty()) throw std::invalid_argument("aggregate: empty sample stream");
    const std::size_t S = v.size();
    MomentEstimate est;
    est.method = Method::mc;
    est.n_samples = S;

    std::complex<double> mean = 0.0;
    for (const auto& x : v) mean += x;
    mean /= static_cast<double>(S);

    if (estimator == Estimator::plain_mean || S < static_cast<std::size_t>(groups) * 2) {
        double ss = 0.0;
        for (const auto& x : v) ss += std::norm(x - mean);
        est.value = LogComplex::from_complex(mean);
        est.std_error = S > 1 ? std::sqrt(ss / (S - 1) / S) : 0.0;
        return est;
    }

    const std::size_t k = static_cast<std::size_t>(groups);
    std::vector<std::complex<double>> gm(k);
    for (std::size_t g = 0; g < k; ++g) {
        const std::size_t lo = g * S / k, hi = (g + 1) * S / k;
        std::complex<double> acc = 0.0;
        for (std::size_t s = lo; s < hi; ++s) acc += v[s];
        gm[g] = acc / static_cast<double>(hi - lo);
    }
    auto median = [](std::vector<double> x) {
        std::sort(x.begin(), x.end());
        const std::size_t m = x.size();
        return m % 2 ? x[m / 2] : 0.5 * (x[m / 2 - 1] + x[m / 2]);
    };
    std::vector<double> re(k), im(k);
    std::complex<double> gmean = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
        re[g] = gm[g].real();
        im[g] = gm[g].imag();
        gmean += gm[g];
    }
    gmean /= static_cast<double>(k);
    double ss = 0.0;
    for (const auto& x : gm) ss += std::norm(x - gmean);
    const double sd = std::sqrt(ss / (k - 1));
    est.value = LogComplex::from_complex({median(re), median(im)});
    // Asymptotic efficiency of the median relative to the mean is 2/pi.
    est.std_error = std::sqrt(M_PI / 2.0) * sd / std::sqrt(static_cast<double>(k));
    return est;
}

MomentEstimate aggregate_log(const std::vector<LogComplex>& samples, Estimator estimator, int groups) {
    if (samples.empty()) throw std::invalid_argument("aggregate: empty sample stream");
    double shift = -INFINITY;
    for (const auto& s : samples) shift = std::max(shift, s.log_mag);
    if (shift == -INFINITY) shift = 0.0;
    std::vector<std::complex<double>> v(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        LogComplex s = samples[i];
        s.log_mag -= shift;
        v[i] = s.to_complex();
    }
    MomentEstimate est = aggregate(v, estimator, groups);
    if (!est.value.is_zero()) est.value.log_mag += shift;
    est.std_error *= std::exp(shift);
    return est;
}

MomentEstimate mc_k1(int N, int n, const SpectralPoint& sp, const McConfig& cfg) {
    check_sizes(N, n);
    check_config(cfg);
    const auto t0 = Clock::now();
    const std::complex<double> mu1 = sp.mu1();
    const double bound = -n * N * std::log(sp.delta());
    auto vals = run_chunks(cfg, [&] {
        return [spec = GueSpectrum(N, cfg.point_mass), mu1, n, bound](Rng& rng) mutable {
            LogComplex z = log_char_poly_from_eigenvalues(spec.draw(rng), mu1).pow(-n);
            if (z.log_mag > bound + 1e-9 * (1.0 + std::abs(bound)))
                throw std::logic_error("mc_k1: per-sample bound |Z^{-n}| <= delta^{-nN} violated");
            return z;
        };
    });
    MomentEstimate est = finish(vals, cfg, t0);
    warn_small_delta(est, N, sp.delta());
    return est;
}

MomentEstimate mc_k2(int N, int n, const SpectralPoint& sp, const McConfig& cfg) {
    check_sizes(N, n);
    check_config(cfg);
    const auto t0 = Clock::now();
    const std::complex<double> mu1 = sp.mu1(), mu2c = sp.mu2_conj();
    auto vals = run_chunks(cfg, [&] {
        return [spec = GueSpectrum(N, cfg.point_mass), mu1, mu2c, n](Rng& rng) mutable {
            const auto& ev = spec.draw(rng);
            return (log_char_poly_from_eigenvalues(ev, mu1) * log_char_poly_from_eigenvalues(ev, mu2c)).pow(-n);
        };
    });
    MomentEstimate est = finish(vals, cfg, t0);
    warn_small_delta(est, N, sp.delta());
    return est;
}

MomentEstimate mc_positive_moment(int N, int n, const SpectralPoint& sp, const McConfig& cfg) {
    check_sizes(N, n);
    check_config(cfg);
    const auto t0 = Clock::now();
    const std::complex<double> mu1 = sp.mu1();
    auto vals = run_chunks(cfg, [&] {
        return [spec = GueSpectrum(N, cfg.point_mass), mu1, n](Rng& rng) mutable {
            return log_char_poly_from_eigenvalues(spec.draw(rng), mu1).pow(n);
        };
    });
    return finish(vals, cfg, t0);
}

MomentEstimate mc_positive_pair(int N, int n, const SpectralPoint& sp, const McConfig& cfg) {
    check_sizes(N, n);
    check_config(cfg);
    const auto t0 = Clock::now();
    const std::complex<double> mu1 = sp.mu1(), mu2c = sp.mu2_conj();
    auto vals = run_chunks(cfg, [&] {
        return [spec = GueSpectrum(N, cfg.point_mass), mu1, mu2c, n](Rng& rng) mutable {
            const auto& ev = spec.draw(rng);
            return (log_char_poly_from_eigenvalues(ev, mu1) * log_char_poly_from_eigenvalues(ev, mu2c)).pow(n);
        };
    });
    return finish(vals, cfg, t0);
}

GeneratingPoint GeneratingPoint::local(double mu, double omega_b, double omega_f, double delta) {
    return {{mu + omega_b / 2, delta}, {mu - omega_b / 2, -delta}, {mu + omega_f / 2, 0.0}, {mu - omega_f / 2, 0.0}};
}

MomentEstimate mc_generating_function(int N, const GeneratingPoint& g, const McConfig& cfg) {
    check_sizes(N, 1);
    check_config(cfg);
    if (!(g.mu1b.imag() > 0.0) || !(g.mu2b_conj.imag() < 0.0))
        throw std::invalid_argument("mc_generating_function: bosonic parameters need Im mu_b > 0");
    const auto t0 = Clock::now();
    auto vals = run_chunks(cfg, [&] {
        return [spec = GueSpectrum(N, cfg.point_mass), g](Rng& rng) mutable {
            const auto& ev = spec.draw(rng);
            return log_char_poly_from_eigenvalues(ev, g.mu1f) * log_char_poly_from_eigenvalues(ev, g.mu2f) /
                   (log_char_poly_from_eigenvalues(ev, g.mu1b) * log_char_poly_from_eigenvalues(ev, g.mu2b_conj));
        };
    });
    MomentEstimate est = finish(vals, cfg, t0);
    warn_small_delta(est, N, g.mu1b.imag());
    return est;
}

MomentEstimate mc_chiral_moment(int N, int n, double m, const McConfig& cfg) {
    check_sizes(N, n);
    check_config(cfg);
    if (!(m > 0.0)) throw std::invalid_argument("mc_chiral_moment: mass m must be > 0");
    const auto t0 = Clock::now();
    auto vals = run_chunks(cfg, [&] {
        return [spec = ChiralSpectrum(N, cfg.point_mass), m, n](Rng& rng) mutable {
            return LogComplex{-n * chiral_log_det(spec.draw(rng), m), 0.0};
        };
    });
    return finish(vals, cfg, t0);
}

MomentEstimate mc_chiral_generating(int N, double m_f, double m_b, const McConfig& cfg) {
    check_sizes(N, 1);
    check_config(cfg);
    if (!(m_f > 0.0) || !(m_b > 0.0)) throw std::invalid_argument("mc_chiral_generating: masses must be > 0");
    const auto t0 = Clock::now();
    auto vals = run_chunks(cfg, [&] {
        return [spec = ChiralSpectrum(N, cfg.point_mass), m_f, m_b](Rng& rng) mutable {
            const auto& s = spec.draw(rng);
            return LogComplex{chiral_log_det(s, m_f) - chiral_log_det(s, m_b), 0.0};
        };
    });
    return finish(vals, cfg, t0);
}

}  // namespace charpoly
