#pragma once

#include "ssac/core.hpp"

namespace ssac {

/// Largest instance the brute-force solver accepts.
inline constexpr std::size_t kMaxExactPoints = 14;

struct ExactSolution {
    double optimal_cost = 0.0;
    /// Canonical labeling (restricted-growth form); `k` is the number of non-empty blocks.
    Labeling labeling;
    CenterSet centers;
};

/// Optimal k-means by enumerating every partition into at most k blocks (with
/// branch-and-bound). Ties keep the lexicographically smallest canonical labeling.
ExactSolution solve_exact(const Dataset& data, std::size_t k);

/// Delta_1 ... Delta_{k_max}.
std::vector<double> delta_sequence(const Dataset& data, std::size_t k_max);

}  // namespace ssac
