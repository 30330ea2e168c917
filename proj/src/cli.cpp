#include "charpoly/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "charpoly/asymptotics.hpp"
#include "charpoly/exact_moments.hpp"
#include "charpoly/montecarlo.hpp"
#include "charpoly/verify.hpp"

namespace charpoly {

namespace {

using cd = std::complex<double>;
using nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

SpectralPoint spectral_point(const RunRequest& r, bool regularized) {
    return regularized ? SpectralPoint(r.mu, r.omega, r.delta) : SpectralPoint::unregularized(r.mu, r.omega, r.delta);
}

McConfig mc_config(const RunRequest& r) {
    McConfig c;
    c.n_samples = r.samples;
    c.seed = RngSeed{r.seed, 0};
    if (r.estimator == "mean")
        c.estimator = Estimator::plain_mean;
    else if (r.estimator == "mom")
        c.estimator = Estimator::median_of_means;
    else
        throw UsageError("unknown estimator: " + r.estimator + " (expected mom or mean)");
    return c;
}

QuadOptions quad_options(const RunRequest& r) {
    QuadOptions q;
    q.nodes = r.nodes;
    q.tolerance = r.tolerance;
    return q;
}

MomentEstimate closed(cd v, Method m) {
    MomentEstimate e;
    e.value = LogComplex::from_complex(v);
    e.method = m;
    return e;
}

std::string quantity_of(const RunRequest& r) {
    return r.quantity.empty() ? quantities_for(r.command, r.ensemble).front() : r.quantity;
}

bool uses_seed(const RunRequest& r) { return r.command == "sample"; }

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& text, const std::string& path, bool force, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    if (std::filesystem::exists(path) && !force)
        throw UsageError("refusing to overwrite existing file " + path + " (pass --force)");
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
}

}  // namespace

const std::vector<std::string>& quantities_for(const std::string& command, const std::string& ensemble) {
    static const std::map<std::pair<std::string, std::string>, std::vector<std::string>> table{
        {{"sample", "gue"}, {"k1", "k2", "positive", "positive_pair", "generating"}},
        {{"exact", "gue"}, {"k1", "k1_determinant", "k2", "positive", "positive_pair", "generating"}},
        {{"asymptotic", "gue"}, {"k1", "k1_pair", "k2", "ratio", "generating"}},
        {{"sample", "chgue"}, {"moment", "generating"}},
        {{"exact", "chgue"}, {"moment", "generating"}},
        {{"asymptotic", "chgue"}, {"limit", "bessel"}},
    };
    const auto it = table.find({command, ensemble});
    if (it == table.end()) throw UsageError("unknown command/ensemble combination: " + command + "/" + ensemble);
    return it->second;
}

MomentEstimate execute(const RunRequest& r) {
    const auto& allowed = quantities_for(r.command, r.ensemble);
    const std::string q = quantity_of(r);
    if (std::find(allowed.begin(), allowed.end(), q) == allowed.end())
        throw UsageError("quantity " + q + " is not available for " + r.command + " --ensemble " + r.ensemble);
    if (r.N < 1) throw UsageError("invalid dimension: N must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    MomentEstimate e;
    const bool gue = r.ensemble == "gue";
    if (r.command == "sample") {
        const McConfig c = mc_config(r);
        if (!gue)
            e = q == "moment" ? mc_chiral_moment(r.N, r.n, r.m, c) : mc_chiral_generating(r.N, r.m_f, r.m_b, c);
        else if (q == "k1")
            e = mc_k1(r.N, r.n, spectral_point(r, true), c);
        else if (q == "k2")
            e = mc_k2(r.N, r.n, spectral_point(r, true), c);
        else if (q == "positive")
            e = mc_positive_moment(r.N, r.n, spectral_point(r, false), c);
        else if (q == "positive_pair")
            e = mc_positive_pair(r.N, r.n, spectral_point(r, false), c);
        else
            e = mc_generating_function(r.N, GeneratingPoint::local(r.mu, r.omega, r.omega_f, r.delta), c);
    } else if (r.command == "exact") {
        const QuadOptions o = quad_options(r);
        if (!gue)
            e = q == "moment" ? chiral_negative_exact(r.N, r.n, r.m, o) : chiral_generating_exact(r.N, r.m_f, r.m_b, o);
        else if (q == "k1")
            e = k1_negative_exact({r.N, r.n, spectral_point(r, true), o});
        else if (q == "k1_determinant")
            e = k1_negative_determinant({r.N, r.n, spectral_point(r, true), o});
        else if (q == "k2")
            e = k2_negative_exact({r.N, r.n, spectral_point(r, true), o});
        else if (q == "positive")
            e = k1_positive_exact({r.N, r.n, spectral_point(r, false), o});
        else if (q == "positive_pair")
            e = k2_positive_exact({r.N, r.n, spectral_point(r, false), o});
        else
            e = generating_exact(r.N, GeneratingPoint::local(r.mu, r.omega, r.omega_f, r.delta), o);
    } else {
        if (!gue) {
            if (q == "limit")
                e = chiral_limit_moment(r.n, r.x, quad_options(r));
            else
                e = closed(chiral_quenched_bessel(r.N * r.m_f, r.N * r.m_b), Method::asymptotic);
        } else if (q == "k1") {
            e = k1_asymptotic(r.N, r.n, spectral_point(r, true));
        } else if (q == "k1_pair") {
            e = k1_pair_asymptotic(r.N, r.n, spectral_point(r, true));
        } else if (q == "k2") {
            e = k2_asymptotic(r.N, r.n, spectral_point(r, true));
        } else if (q == "ratio") {
            e = closed(moment_ratio_limit(r.n, r.mu, r.omega, r.delta), Method::asymptotic);
        } else {
            e = closed(generating_asymptotic(r.N, r.mu, r.omega, r.omega_f, r.delta), Method::asymptotic);
        }
    }
    if (e.runtime_ms == 0.0)
        e.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return e;
}

std::string record_json(const RunRequest& r, const MomentEstimate& e, bool with_runtime) {
    ordered_json j;
    j["quantity"] = quantity_of(r);
    j["ensemble"] = r.ensemble;
    j["command"] = r.command;
    j["params"] = {{"N", r.N},         {"n", r.n},         {"mu", r.mu},
                   {"omega", r.omega}, {"delta", r.delta}, {"omega_f", r.omega_f},
                   {"m", r.m},         {"m_f", r.m_f},     {"m_b", r.m_b},
                   {"x", r.x},         {"samples", r.samples}, {"estimator", r.estimator},
                   {"nodes", r.nodes}, {"tolerance", r.tolerance}};
    const cd z = e.complex();
    ordered_json v;
    v["log_mag"] = e.value.is_zero() ? ordered_json(nullptr) : ordered_json(e.value.log_mag);
    v["phase"] = e.value.phase;
    v["re"] = z.real();
    v["im"] = z.imag();
    j["value"] = v;
    j["std_error"] = e.std_error;
    j["rel_error"] = e.rel_error;
    j["method"] = to_string(e.method);
    j["n_samples_or_nodes"] = e.n_samples;
    j["converged"] = e.converged;
    j["warnings"] = e.warnings;
    j["seed"] = uses_seed(r) ? ordered_json(r.seed) : ordered_json(nullptr);
    if (with_runtime) j["runtime_ms"] = e.runtime_ms;
    j["tool_version"] = kToolVersion;
    return j.dump(2) + "\n";
}

std::pair<RunRequest, MomentEstimate> parse_record(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    RunRequest r;
    r.quantity = j.at("quantity").get<std::string>();
    r.ensemble = j.at("ensemble").get<std::string>();
    r.command = j.at("command").get<std::string>();
    const auto& p = j.at("params");
    r.N = p.at("N");
    r.n = p.at("n");
    r.mu = p.at("mu");
    r.omega = p.at("omega");
    r.delta = p.at("delta");
    r.omega_f = p.at("omega_f");
    r.m = p.at("m");
    r.m_f = p.at("m_f");
    r.m_b = p.at("m_b");
    r.x = p.at("x");
    r.samples = p.at("samples");
    r.estimator = p.at("estimator").get<std::string>();
    r.nodes = p.at("nodes");
    r.tolerance = p.at("tolerance");
    if (!j.at("seed").is_null()) r.seed = j.at("seed");

    MomentEstimate e;
    const auto& v = j.at("value");
    e.value = v.at("log_mag").is_null() ? LogComplex::zero() : LogComplex{v.at("log_mag"), v.at("phase")};
    e.std_error = j.at("std_error");
    e.rel_error = j.at("rel_error");
    const std::string m = j.at("method");
    for (Method k : {Method::mc, Method::quadrature, Method::asymptotic, Method::closed_form})
        if (to_string(k) == m) e.method = k;
    e.n_samples = j.at("n_samples_or_nodes");
    e.converged = j.at("converged");
    e.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("runtime_ms")) e.runtime_ms = j.at("runtime_ms");
    return {r, e};
}

std::string csv_header() {
    return "quantity,ensemble,command,N,n,mu,omega,delta,omega_f,m,m_f,m_b,x,re,im,log_mag,phase,std_error,method,"
           "n_samples_or_nodes,seed,runtime_ms,tool_version\n";
}

std::string csv_row(const RunRequest& r, const MomentEstimate& e) {
    const cd z = e.complex();
    std::ostringstream s;
    s << quantity_of(r) << ',' << r.ensemble << ',' << r.command << ',' << r.N << ',' << r.n << ',' << g17(r.mu)
      << ',' << g17(r.omega) << ',' << g17(r.delta) << ',' << g17(r.omega_f) << ',' << g17(r.m) << ','
      << g17(r.m_f) << ',' << g17(r.m_b) << ',' << g17(r.x) << ',' << g17(z.real()) << ',' << g17(z.imag()) << ','
      << g17(e.value.log_mag) << ',' << g17(e.value.phase) << ',' << g17(e.std_error) << ',' << to_string(e.method)
      << ',' << e.n_samples << ',' << (uses_seed(r) ? std::to_string(r.seed) : "") << ',' << g17(e.runtime_ms)
      << ',' << kToolVersion << '\n';
    return s.str();
}

std::string merge_records_csv(const std::vector<std::string>& texts) {
    std::vector<std::pair<RunRequest, MomentEstimate>> recs;
    for (const auto& t : texts) recs.push_back(parse_record(t));
    std::stable_sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
        const RunRequest &x = a.first, &y = b.first;
        return std::tuple(quantity_of(x), x.N, x.n, x.mu, x.omega, x.delta, to_string(a.second.method)) <
               std::tuple(quantity_of(y), y.N, y.n, y.mu, y.omega, y.delta, to_string(b.second.method));
    });
    std::string out = csv_header();
    for (const auto& [r, e] : recs) out += csv_row(r, e);
    return out;
}

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moments of GUE and chiral GUE characteristic polynomials: sampling, quadrature, asymptotics"};
    app.require_subcommand(1);

    RunRequest req;
    std::string format = "json", out_path, suite;
    std::vector<std::string> from;
    bool force = false;

    auto add_run = [&](const std::string& name, const std::string& desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->add_option("--ensemble", req.ensemble, "gue or chgue")->check(CLI::IsMember({"gue", "chgue"}));
        s->add_option("--quantity", req.quantity, "quantity to evaluate (see README)");
        s->add_option("--N", req.N, "matrix dimension");
        s->add_option("--n", req.n, "moment order");
        s->add_option("--mu", req.mu, "spectral point");
        s->add_option("--omega", req.omega, "separation (bosonic separation for the generating function)");
        s->add_option("--delta", req.delta, "regularization Im mu1");
        s->add_option("--omega_f", req.omega_f, "fermionic separation for the generating function");
        s->add_option("--m", req.m, "chiral mass");
        s->add_option("--m_f", req.m_f, "fermionic chiral mass");
        s->add_option("--m_b", req.m_b, "bosonic chiral mass");
        s->add_option("--x", req.x, "scaled mass for the chiral-limit integral");
        s->add_option("--samples", req.samples, "Monte Carlo samples");
        s->add_option("--seed", req.seed, "RNG seed")->envname("CHARPOLY_SEED");
        s->add_option("--estimator", req.estimator, "mom or mean")->check(CLI::IsMember({"mom", "mean"}));
        s->add_option("--nodes", req.nodes, "quadrature nodes per dimension (0: default)");
        s->add_option("--tolerance", req.tolerance, "quadrature tolerance");
        s->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--out", out_path, "output file (default stdout)");
        s->add_flag("--force", force, "overwrite an existing output file");
        return s;
    };
    CLI::App* sample = add_run("sample", "Monte Carlo estimate");
    CLI::App* exact = add_run("exact", "exact finite-N quadrature");
    add_run("asymptotic", "large-N closed form");

    std::uint64_t vseed = 42;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "identities | moments | asymptotics | chiral | generating | all")->required();
    verify->add_option("--seed", vseed, "RNG seed")->envname("CHARPOLY_SEED");
    verify->add_option("--out", out_path, "output file (default stdout)");
    verify->add_flag("--force", force, "overwrite an existing output file");

    CLI::App* report = app.add_subcommand("report", "merge JSON records into one CSV table");
    report->add_option("--from", from, "JSON record files")->required()->expected(1, -1);
    report->add_option("--out", out_path, "output file (default stdout)");
    report->add_flag("--force", force, "overwrite an existing output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (verify->parsed()) {
            const VerificationReport r = run_suite(suite, vseed);
            write_output(report_to_json(r) + "\n", out_path, force, out);
            return r.pass ? 0 : 1;
        }
        if (report->parsed()) {
            std::vector<std::string> texts;
            for (const auto& path : from) {
                std::ifstream f(path);
                if (!f) throw UsageError("cannot read " + path);
                std::stringstream ss;
                ss << f.rdbuf();
                texts.push_back(ss.str());
            }
            write_output(merge_records_csv(texts), out_path, force, out);
            return 0;
        }
        req.command = sample->parsed() ? "sample" : exact->parsed() ? "exact" : "asymptotic";
        const MomentEstimate e = execute(req);
        write_output(format == "json" ? record_json(req, e) : csv_header() + csv_row(req, e), out_path, force, out);
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace charpoly
