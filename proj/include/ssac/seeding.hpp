#pragma once

#include <cstdint>
#include <span>

#include "ssac/core.hpp"
#include "ssac/oracle.hpp"

namespace ssac {

struct SeedingResult {
    CenterSet centers;
    std::vector<std::size_t> chosen_indices;
    std::uint64_t queries_used = 0;
    /// Outer rounds where every one of the ceil(log2 k) attempts hit a covered cluster.
    std::size_t rounds_exhausted = 0;
    /// Sampling stopped because every point already coincided with a center.
    bool degenerate_stop = false;
};

struct NewClusterAnswer {
    bool fresh = false;
    std::uint64_t queries = 0;
};

/// Classic D^2 seeding: first center uniform, the rest D^2-sampled. No queries.
SeedingResult kmeans_pp(const Dataset& data, std::size_t k, Rng& rng);

/// True iff `x` is in none of the clusters of `chosen`. Scans in insertion order and
/// stops at the first "same" answer.
NewClusterAnswer new_cluster(std::span<const std::size_t> chosen, std::size_t x, SameClusterOracle& oracle);

/// D^2 seeding that retries each round up to ceil(log2 k) times until the oracle confirms
/// the draw lands in an uncovered cluster. Uses at most (k-1)^2 * ceil(log2 k) queries.
SeedingResult query_kmeans_pp(const Dataset& data, std::size_t k, SameClusterOracle& oracle, Rng& rng);

/// Hard cap on the number of queries made by query_kmeans_pp.
std::uint64_t query_kmeans_pp_query_cap(std::size_t k);

struct PaddedCenters {
    CenterSet centers;
    std::size_t padded = 0;
};

/// Tops `centers` up to k with D^2-sampled data points (for cost reporting when an
/// algorithm ended with fewer than k centers). Stops early on a degenerate distribution.
PaddedCenters pad_centers(const Dataset& data, CenterSet centers, std::size_t k, Rng& rng);

}  // namespace ssac
