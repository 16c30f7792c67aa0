#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>

#include "ssac/core.hpp"
#include "ssac/oracle.hpp"

namespace ssac {

struct SampleSizes {
    std::size_t N = 0;  ///< D^2 sample drawn per round to find the largest uncovered cluster
    std::size_t M = 0;  ///< minimum accepted uniform-sample size for a round to count
    std::size_t L = 0;  ///< D^2 draws fed to rejection sampling per round
};

/// Parameters of Query-k-means.
///
/// At scale 1 the sample sizes are N = ceil(2^12 k^3 / eps^2), M = ceil(64 k / eps) and
/// L = ceil(2^23 k^2 / eps^4). A smaller scale multiplies all three (M floored at 4); the
/// approximation guarantee only holds at scale 1. `sizes` overrides the formulas outright.
struct PtasConfig {
    std::size_t k = 1;
    double eps = 0.5;
    double scale = 1.0;
    std::size_t repeats = 10;
    /// Run with eps / ((4 + eps/2) k) so that the guarantee does not need irreducibility.
    bool general_mode = false;
    std::optional<SampleSizes> sizes;

    void validate() const;
    SampleSizes sample_sizes() const;
};

/// eps / ((4 + eps/2) k).
double general_mode_eps(double eps, std::size_t k);

/// Config with the general-mode eps substitution applied (general_mode cleared afterwards).
PtasConfig effective_config(const PtasConfig& cfg);

struct RoundTrace {
    std::size_t round = 0;
    std::size_t sample_size = 0;
    std::optional<std::size_t> representative;
    std::size_t accepted_size = 0;
    bool accepted = false;
    std::uint64_t queries = 0;
    /// Draws whose acceptance probability had to be clamped to 1.
    std::size_t clamp_count = 0;
};

struct UncoveredClusterResult {
    /// Cheapest member of the largest bucket not seeded by a representative; empty when
    /// every bucket is representative-seeded.
    std::optional<std::size_t> representative;
    std::uint64_t queries = 0;
    std::vector<std::vector<std::size_t>> buckets;
};

/// Buckets R followed by the sample S into oracle-equivalence classes (at most k buckets,
/// one query per existing bucket per sample point) and picks the point to grow next.
UncoveredClusterResult uncovered_cluster(const Dataset& data, const CenterSet& centers,
                                         std::span<const std::size_t> sample,
                                         std::span<const std::size_t> representatives, std::size_t k,
                                         SameClusterOracle& oracle);

struct UniformSampleResult {
    std::vector<std::size_t> sample;
    std::uint64_t queries = 0;
    std::size_t clamp_count = 0;
};

/// Acceptance probability min(1, eps/128 * Phi(C,{s}) / Phi(C,{x})); 1 replaces the ratio
/// when C is empty.
double acceptance_probability(double eps, const CenterSet& centers, const Dataset& data, std::size_t s,
                              std::size_t x, bool* clamped = nullptr);

/// L rounds of D^2 draw + same-cluster check + rejection; the survivors are a uniform
/// sample of s's cluster. Exactly L queries.
UniformSampleResult uniform_sample(const Dataset& data, const CenterSet& centers, std::size_t s,
                                   const PtasConfig& cfg, SameClusterOracle& oracle, Rng& rng);

struct CoreResult {
    CenterSet centers;
    std::vector<std::size_t> representatives;
    std::vector<RoundTrace> trace;
    std::uint64_t queries = 0;
    std::size_t failed_rounds = 0;
    bool degenerate_stop = false;
};

/// One run of Query-k-means (k rounds). Uses cfg.eps as given; see effective_config.
CoreResult query_kmeans_core(const Dataset& data, const PtasConfig& cfg, SameClusterOracle& oracle, Rng& rng);

/// k (k N + L).
std::uint64_t query_kmeans_query_cap(const PtasConfig& cfg);

using OracleFactory = std::function<std::unique_ptr<SameClusterOracle>(std::size_t repeat)>;

struct RunOutcome {
    CoreResult core;
    /// core.centers padded to k with D^2-sampled points when rounds failed.
    CenterSet reported_centers;
    std::size_t padded = 0;
    double cost = 0.0;
    OracleStats oracle_stats;
    std::uint64_t algo_seed = 0;
};

struct BestOfRuns {
    std::vector<RunOutcome> runs;
    std::size_t best = 0;

    const RunOutcome& best_run() const { return runs.at(best); }
};

/// Index of the cheapest run; ties go to the earliest.
std::size_t best_run_index(std::span<const RunOutcome> runs);

/// cfg.repeats independent runs (each with its own oracle from `make_oracle` and its own
/// random stream derived from `algo_seed`), keeping the cheapest.
BestOfRuns query_kmeans(const Dataset& data, const PtasConfig& cfg, const OracleFactory& make_oracle,
                        std::uint64_t algo_seed, std::size_t threads = 1);

}  // namespace ssac
