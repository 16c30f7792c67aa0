#include "ssac/oracle.hpp"

#include <algorithm>
#include <string>

namespace ssac {

GroundTruth::GroundTruth(Labeling l) : labeling(std::move(l)) {
    if (labeling.k < 1) throw ContractViolation("ground truth needs at least one cluster");
    if (labeling.size() == 0) throw ContractViolation("ground truth covers no points");
}

std::size_t GroundTruth::label(std::size_t i) const {
    if (i >= labeling.size()) {
        throw ContractViolation("oracle query index " + std::to_string(i) + " out of range");
    }
    return labeling[i];
}

std::uint64_t SameClusterOracle::pair_key(std::size_t i, std::size_t j) {
    const auto lo = static_cast<std::uint64_t>(std::min(i, j));
    const auto hi = static_cast<std::uint64_t>(std::max(i, j));
    return (hi << 32) | lo;
}

bool SameClusterOracle::same_cluster(std::size_t i, std::size_t j) {
    truth_.label(i);
    truth_.label(j);
    ++stats_.query_count;
    if (seen_pairs_.insert(pair_key(i, j)).second) ++stats_.distinct_pair_count;
    return answer(i, j);
}

void SameClusterOracle::reset_stats() {
    stats_ = {};
    seen_pairs_.clear();
}

bool PerfectOracle::answer(std::size_t i, std::size_t j) {
    return truth_.label(i) == truth_.label(j);
}

FaultyOracle::FaultyOracle(GroundTruth truth, double q, std::uint64_t seed)
    : SameClusterOracle(std::move(truth)), q_(q), rng_(seed) {
    if (!(q >= 0.0 && q < 0.5)) throw ContractViolation("q must be in [0, 1/2)");
}

bool FaultyOracle::answer(std::size_t i, std::size_t j) {
    if (i == j) return true;
    const auto key = pair_key(i, j);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const bool truth = truth_.label(i) == truth_.label(j);
    const bool reply = bernoulli(rng_, q_) ? !truth : truth;
    cache_.emplace(key, reply);
    return reply;
}

}  // namespace ssac
