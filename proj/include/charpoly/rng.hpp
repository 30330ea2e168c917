#pragma once

#include <cstdint>
#include <random>

#include "charpoly/types.hpp"

namespace charpoly {

// mt19937_64 seeded through seed_seq (both fully specified by the standard),
// with uniform and normal variates derived here rather than through the
// implementation-defined std distributions, so streams match across platforms.
class Rng {
public:
    explicit Rng(RngSeed s);

    double uniform();  // in (0, 1)
    double normal();   // standard normal, Box-Muller

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Seed for the k-th independent substream of a base seed.
RngSeed derive_seed(RngSeed base, std::uint64_t k);

}  // namespace charpoly
