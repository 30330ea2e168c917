#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "charpoly/types.hpp"

namespace charpoly {

// Everything one sample/exact/asymptotic invocation needs.
struct RunRequest {
    std::string command = "exact";  // sample | exact | asymptotic
    std::string ensemble = "gue";    // gue | chgue
    std::string quantity;            // empty: k1 for gue, moment for chgue
    int N = 4;
    int n = 1;
    double mu = 0.0, omega = 0.0, delta = 0.0, omega_f = 0.0;
    double m = 0.5, m_f = 0.5, m_b = 0.5, x = 1.0;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 42;
    std::string estimator = "mom";  // mom | mean
    int nodes = 0;
    double tolerance = 1e-10;

    bool operator==(const RunRequest&) const = default;
};

// Valid quantities for a (command, ensemble) pair, default first.
const std::vector<std::string>& quantities_for(const std::string& command, const std::string& ensemble);

// Validates the request and runs the evaluator. Throws std::invalid_argument
// (or std::domain_error) for inconsistent parameters.
MomentEstimate execute(const RunRequest& req);

// One output record: {quantity, ensemble, params, value{log_mag, phase, re, im},
// std_error, method, n_samples_or_nodes, seed, runtime_ms, tool_version, ...}.
std::string record_json(const RunRequest& req, const MomentEstimate& est, bool with_runtime = true);
std::pair<RunRequest, MomentEstimate> parse_record(const std::string& json_text);

std::string csv_header();
std::string csv_row(const RunRequest& req, const MomentEstimate& est);

// Merges records into one CSV table sorted by (quantity, N, n, mu, omega, delta, method).
std::string merge_records_csv(const std::vector<std::string>& json_texts);

// Exit codes: 0 success, 1 failed check or runtime failure, 2 usage error.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace charpoly
