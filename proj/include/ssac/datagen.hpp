#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ssac/core.hpp"

namespace ssac {

enum class GenKind { GaussianMixture, MarginBalls, Grid, Line };

std::string to_string(GenKind kind);
std::optional<GenKind> parse_gen_kind(const std::string& name);

struct GenSpec {
    GenKind kind = GenKind::GaussianMixture;
    std::size_t k = 2;
    std::size_t d = 2;
    std::size_t n_per_cluster = 10;
    /// Pairwise distance between cluster centers.
    double separation = 10.0;
    /// Gaussian sigma (gaussian-mixture, grid, line) or ball radius (margin-balls).
    double spread = 1.0;
    /// Margin factor, margin-balls only; must exceed 1.
    double gamma = 2.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Instance {
    Dataset data;
    Labeling labels;
};

/// Deterministic in the GenSpec (including seed). Throws GenerationError when a margin-balls
/// instance cannot be made to satisfy its gamma.
Instance generate(const GenSpec& spec);

/// Cluster centers used by `generate`, pairwise at least `separation` apart.
std::vector<Point> place_centers(const GenSpec& spec, Rng& rng);

}  // namespace ssac
