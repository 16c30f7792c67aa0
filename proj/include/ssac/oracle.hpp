#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "ssac/core.hpp"

namespace ssac {

/// Hidden partition that same-cluster queries are answered from.
struct GroundTruth {
    Labeling labeling;

    explicit GroundTruth(Labeling l);
    std::size_t size() const { return labeling.size(); }
    std::size_t label(std::size_t i) const;
};

struct OracleStats {
    std::uint64_t query_count = 0;
    std::uint64_t distinct_pair_count = 0;
};

/// Same-cluster query answerer. Every call to same_cluster() is counted.
class SameClusterOracle {
public:
    virtual ~SameClusterOracle() = default;

    bool same_cluster(std::size_t i, std::size_t j);

    OracleStats stats() const { return stats_; }
    /// Zeroes both counters. Faulty answers already issued are kept.
    void reset_stats();

    std::size_t size() const { return truth_.size(); }
    const GroundTruth& truth() const { return truth_; }

protected:
    explicit SameClusterOracle(GroundTruth truth) : truth_(std::move(truth)) {}
    virtual bool answer(std::size_t i, std::size_t j) = 0;

    static std::uint64_t pair_key(std::size_t i, std::size_t j);

    GroundTruth truth_;

private:
    OracleStats stats_;
    std::unordered_set<std::uint64_t> seen_pairs_;
};

class PerfectOracle final : public SameClusterOracle {
public:
    explicit PerfectOracle(GroundTruth truth) : SameClusterOracle(std::move(truth)) {}

protected:
    bool answer(std::size_t i, std::size_t j) override;
};

/// Answers are flipped with probability exactly q on the first query of an unordered pair
/// and then memoized, so repeating a query never changes its answer. Self-pairs are
/// always answered truthfully.
class FaultyOracle final : public SameClusterOracle {
public:
    FaultyOracle(GroundTruth truth, double q, std::uint64_t seed);

    double error_rate() const { return q_; }
    std::size_t cached_pairs() const { return cache_.size(); }

protected:
    bool answer(std::size_t i, std::size_t j) override;

private:
    double q_;
    Rng rng_;
    std::unordered_map<std::uint64_t, bool> cache_;
};

}  // namespace ssac
