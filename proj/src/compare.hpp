#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prng.hpp"
#include "sts.hpp"

namespace chaoscrypt {

// `count` reproducible 64-hex-digit seeds expanded from `base` with SplitMix64.
std::vector<std::string> expand_seeds(std::uint64_t base, std::size_t count);

/// Battery pass counts for every generator kind under every seed.
struct ComparisonMatrix {
    std::vector<GeneratorKind> kinds;
    std::vector<std::string> seeds;
    std::uint64_t n_bits = 0;
    double alpha = sts::kDefaultAlpha;
    std::vector<std::vector<int>> passes;      // [kind][seed]
    std::vector<std::vector<int>> applicable;  // [kind][seed]

    double mean_passes(std::size_t kind_index) const;
};

// Runs kinds x seeds jobs over `threads` workers (0 picks the hardware
// concurrency). Results land in input order whatever the scheduling; the
// first failing job, in input order, is rethrown.
ComparisonMatrix compare_generators(const std::vector<GeneratorKind>& kinds, const std::vector<std::string>& seeds,
                                    std::uint64_t n_bits, double alpha = sts::kDefaultAlpha, unsigned threads = 0);

// One row per seed, one column per kind, then a mean row.
std::string format_matrix(const ComparisonMatrix& matrix);

}  // namespace chaoscrypt
