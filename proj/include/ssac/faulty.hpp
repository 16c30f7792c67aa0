#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ssac/ptas.hpp"

namespace ssac {

/// Configuration of Faulty-Query-k-means. Same knobs as the perfect-oracle PTAS plus the
/// oracle error rate. The D^2 sample per round is twice as large there:
/// N = ceil(2^13 k^3 / eps^2) at scale 1.
struct FaultyConfig : PtasConfig {
    double q = 0.0;
    /// Smallest recovered cluster (counted with multiplicity) that partition_sample reports.
    /// Default ceil(scale * 64 k / eps), floored at 3.
    std::optional<std::size_t> min_cluster_size;

    void validate() const;
    SampleSizes faulty_sizes() const;
    std::size_t resolved_min_cluster_size() const;
};

FaultyConfig effective_config(const FaultyConfig& cfg);

/// Same-cluster answers between the distinct indices of a sample. Duplicated indices share
/// one vertex; `multiplicity` records how often each was drawn.
struct NoisyGraph {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> multiplicity;
    /// Row-major |V| x |V|, symmetric, zero diagonal.
    std::vector<std::uint8_t> adjacency;
    std::uint64_t queries = 0;

    std::size_t order() const { return vertices.size(); }
    bool adjacent(std::size_t a, std::size_t b) const { return adjacency[a * vertices.size() + b] != 0; }
};

/// One query per unordered pair of distinct indices in `sample`.
NoisyGraph build_noisy_graph(std::span<const std::size_t> sample, SameClusterOracle& oracle);

/// Recovers the planted clusters of a noisy same-cluster graph; each returned cluster is a
/// list of vertex positions. Clusters lighter than `min_mass` (by multiplicity) are dropped.
std::vector<std::vector<std::size_t>> recover_clusters(const NoisyGraph& graph, double q, std::size_t min_mass);

struct PartitionResult {
    /// Disjoint multisets of sample indices, each sorted ascending, ordered by first index.
    std::vector<std::vector<std::size_t>> clusters;
    std::uint64_t queries = 0;
};

PartitionResult partition_sample(std::span<const std::size_t> sample, SameClusterOracle& oracle,
                                 const FaultyConfig& cfg);

struct CoverageAnswer {
    bool covered = false;
    std::uint64_t queries = 0;
};

/// True iff some target is reported same-cluster with a strict majority of the distinct
/// indices in `points`. Targets are scanned in order and the scan stops at the first hit.
CoverageAnswer is_covered(std::span<const std::size_t> targets, std::span<const std::size_t> points,
                          SameClusterOracle& oracle);

/// Batch version of the rejection sampler: draw L points, partition them, keep the parts
/// that s covers and thin them with the usual acceptance probability.
UniformSampleResult faulty_uniform_sample(const Dataset& data, const CenterSet& centers, std::size_t s,
                                          const FaultyConfig& cfg, SameClusterOracle& oracle, Rng& rng);

/// Uncovered-cluster selection through partition_sample and majority coverage tests
/// against the representatives chosen so far.
UncoveredClusterResult faulty_uncovered_cluster(const Dataset& data, const CenterSet& centers,
                                                std::span<const std::size_t> sample,
                                                std::span<const std::size_t> representatives,
                                                const FaultyConfig& cfg, SameClusterOracle& oracle);

CoreResult faulty_query_kmeans_core(const Dataset& data, const FaultyConfig& cfg, SameClusterOracle& oracle,
                                    Rng& rng);

/// k (N^2 + k N + L^2 + L).
std::uint64_t faulty_query_kmeans_query_cap(const FaultyConfig& cfg);

BestOfRuns faulty_query_kmeans(const Dataset& data, const FaultyConfig& cfg, const OracleFactory& make_oracle,
                               std::uint64_t algo_seed, std::size_t threads = 1);

}  // namespace ssac
