#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ssac/errors.hpp"
#include "ssac/random.hpp"

namespace ssac {

using Point = std::vector<double>;
using CenterSet = std::vector<Point>;

/// n points in d dimensions. Index i always refers to the same point.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<Point> points);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return dim_; }
    bool empty() const { return points_.empty(); }

    const Point& operator[](std::size_t i) const { return points_[i]; }
    const Point& at(std::size_t i) const;
    const std::vector<Point>& points() const { return points_; }

    /// Copy of the points selected by `indices` (duplicates kept).
    Dataset subset(std::span<const std::size_t> indices) const;

private:
    std::vector<Point> points_;
    std::size_t dim_ = 0;
};

/// Cluster ids in {0, ..., k-1}, one per point.
struct Labeling {
    std::vector<std::size_t> labels;
    std::size_t k = 0;

    Labeling() = default;
    Labeling(std::vector<std::size_t> labels, std::size_t k);

    std::size_t size() const { return labels.size(); }
    std::size_t operator[](std::size_t i) const { return labels[i]; }
    std::vector<std::size_t> sizes() const;
    /// Indices per cluster id, each list ascending.
    std::vector<std::vector<std::size_t>> members() const;
};

struct WeightedIndex {
    std::size_t index = 0;
    double weight = 0.0;
};

double squared_dist(std::span<const double> p, std::span<const double> q);

/// Index of the nearest center; ties go to the lowest index.
std::size_t nearest_center(const CenterSet& centers, std::span<const double> x);

/// Phi(C, {x}).
double point_cost(const CenterSet& centers, std::span<const double> x);

/// Phi(C, X). Throws NoCentersError when C is empty.
double cost(const CenterSet& centers, const Dataset& data);
/// Phi(C, S) for the (multi)set S given by indices into `data`.
double cost(const CenterSet& centers, const Dataset& data, std::span<const std::size_t> indices);

Point centroid(std::span<const Point> points);
Point centroid(const Dataset& data, std::span<const std::size_t> indices);

/// Optimal 1-means cost: Phi({mu(S)}, S).
double delta1(std::span<const Point> points);
double delta1(const Dataset& data, std::span<const std::size_t> indices);

/// Nearest-center labeling (ties toward the lowest center index).
Labeling assign(const CenterSet& centers, const Dataset& data);

/// Per-point D^2 masses. With no centers every weight is 1 (uniform sampling).
std::vector<WeightedIndex> d2_weights(const CenterSet& centers, const Dataset& data);

/// Draws indices with probability proportional to their D^2 weight.
class D2Sampler {
public:
    /// Throws DegenerateDistributionError if centers exist and every weight is zero.
    D2Sampler(const CenterSet& centers, const Dataset& data);

    std::size_t draw(Rng& rng) { return dist_(rng); }
    /// Phi(C, X), or n for the uniform case.
    double total_weight() const { return total_; }
    double weight(std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const { return weights_; }

private:
    std::vector<double> weights_;
    double total_ = 0.0;
    std::discrete_distribution<std::size_t> dist_;
};

/// `count` independent D^2 draws with replacement.
std::vector<std::size_t> d2_sample(const CenterSet& centers, const Dataset& data, std::size_t count,
                                   Rng& rng);

/// gamma-margin property: gamma * ||x - mu(X_i)|| < ||y - mu(X_i)|| for every x in X_i, y outside.
bool check_margin(const Dataset& data, const Labeling& labeling, double gamma);

/// Computes Delta_k(X) for a given k.
using OptimalCostFn = std::function<double(const Dataset&, std::size_t)>;

/// (k, eps)-irreducibility: Delta_{k-1}(X) >= (1 + eps) * Delta_k(X).
/// Limited to n <= 14 since both values are computed exactly.
bool check_irreducible(const Dataset& data, std::size_t k, double eps, const OptimalCostFn& optimal_cost);

/// ceil(log2(k)) for k >= 1.
std::size_t ceil_log2(std::size_t k);

}  // namespace ssac
