#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "charpoly/types.hpp"

namespace charpoly {

inline constexpr const char* kToolVersion = "0.1.0";

// One check of a suite. A check passes when metric <= tolerance; for
// yes/no checks metric is 0 or 1 and tolerance 0.
struct CheckRecord {
    std::string id;
    int criterion = 0;  // acceptance criterion number
    std::string params;
    std::complex<double> expected{0.0, 0.0};
    std::complex<double> got{0.0, 0.0};
    double metric = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
    std::string note;
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckRecord> records;
    bool pass = true;
    std::string tool_version = kToolVersion;
    std::uint64_t seed = 0;
};

const std::vector<std::string>& suite_names();  // identities moments asymptotics chiral generating all

// Throws std::invalid_argument for an unknown suite name. Records come in a
// fixed order and every number depends only on (suite, seed).
VerificationReport run_suite(const std::string& name, std::uint64_t seed, Exec exec = Exec::parallel);

// JSON text of a report; runtime fields are omitted when with_runtime is false.
std::string report_to_json(const VerificationReport& r, bool with_runtime = true);

}  // namespace charpoly
