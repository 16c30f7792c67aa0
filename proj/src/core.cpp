#include "ssac/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ssac/exact.hpp"

namespace ssac {

Dataset::Dataset(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw ContractViolation("dataset must contain at least one point");
    dim_ = points_.front().size();
    if (dim_ == 0) throw ContractViolation("dataset dimension must be at least 1");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].size() != dim_) {
            throw ContractViolation("point " + std::to_string(i) + " has dimension " +
                                    std::to_string(points_[i].size()) + ", expected " +
                                    std::to_string(dim_));
        }
        for (double v : points_[i]) {
            if (!std::isfinite(v)) {
                throw ContractViolation("point " + std::to_string(i) + " has a non-finite coordinate");
            }
        }
    }
}

const Point& Dataset::at(std::size_t i) const {
    if (i >= points_.size()) throw ContractViolation("point index out of range");
    return points_[i];
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<Point> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(at(i));
    return Dataset(std::move(out));
}

Labeling::Labeling(std::vector<std::size_t> l, std::size_t k_) : labels(std::move(l)), k(k_) {
    for (std::size_t v : labels) {
        if (v >= k) throw ContractViolation("label out of range");
    }
}

std::vector<std::size_t> Labeling::sizes() const {
    std::vector<std::size_t> out(k, 0);
    for (std::size_t v : labels) ++out[v];
    return out;
}

std::vector<std::vector<std::size_t>> Labeling::members() const {
    std::vector<std::vector<std::size_t>> out(k);
    for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(i);
    return out;
}

double squared_dist(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw ContractViolation("squared_dist: dimension mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double diff = p[j] - q[j];
        s += diff * diff;
    }
    return s;
}

std::size_t nearest_center(const CenterSet& centers, std::span<const double> x) {
    if (centers.empty()) throw NoCentersError();
    std::size_t best = 0;
    double best_d = squared_dist(centers[0], x);
    for (std::size_t c = 1; c < centers.size(); ++c) {
        const double d = squared_dist(centers[c], x);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

double point_cost(const CenterSet& centers, std::span<const double> x) {
    if (centers.empty()) throw NoCentersError();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : centers) best = std::min(best, squared_dist(c, x));
    return best;
}

double cost(const CenterSet& centers, const Dataset& data) {
    if (centers.empty()) throw NoCentersError();
    double total = 0.0;
    for (const auto& x : data.points()) total += point_cost(centers, x);
    return total;
}

double cost(const CenterSet& centers, const Dataset& data, std::span<const std::size_t> indices) {
    if (centers.empty()) throw NoCentersError();
    double total = 0.0;
    for (std::size_t i : indices) total += point_cost(centers, data.at(i));
    return total;
}

Point centroid(std::span<const Point> points) {
    if (points.empty()) throw ContractViolation("centroid of an empty set");
    const std::size_t d = points.front().size();
    Point mu(d, 0.0);
    for (const auto& p : points) {
        if (p.size() != d) throw ContractViolation("centroid: dimension mismatch");
        for (std::size_t j = 0; j < d; ++j) mu[j] += p[j];
    }
    for (double& v : mu) v /= static_cast<double>(points.size());
    return mu;
}

Point centroid(const Dataset& data, std::span<const std::size_t> indices) {
    if (indices.empty()) throw ContractViolation("centroid of an empty set");
    Point mu(data.dim(), 0.0);
    for (std::size_t i : indices) {
        const auto& p = data.at(i);
        for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += p[j];
    }
    for (double& v : mu) v /= static_cast<double>(indices.size());
    return mu;
}

double delta1(std::span<const Point> points) {
    const Point mu = centroid(points);
    double total = 0.0;
    for (const auto& p : points) total += squared_dist(p, mu);
    return total;
}

double delta1(const Dataset& data, std::span<const std::size_t> indices) {
    const Point mu = centroid(data, indices);
    double total = 0.0;
    for (std::size_t i : indices) total += squared_dist(data[i], mu);
    return total;
}

Labeling assign(const CenterSet& centers, const Dataset& data) {
    std::vector<std::size_t> labels(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) labels[i] = nearest_center(centers, data[i]);
    return Labeling(std::move(labels), centers.size());
}

std::vector<WeightedIndex> d2_weights(const CenterSet& centers, const Dataset& data) {
    std::vector<WeightedIndex> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[i].index = i;
        out[i].weight = centers.empty() ? 1.0 : point_cost(centers, data[i]);
    }
    return out;
}

D2Sampler::D2Sampler(const CenterSet& centers, const Dataset& data) {
    weights_.reserve(data.size());
    for (const auto& w : d2_weights(centers, data)) {
        weights_.push_back(w.weight);
        total_ += w.weight;
    }
    if (!(total_ > 0.0)) throw DegenerateDistributionError();
    dist_ = std::discrete_distribution<std::size_t>(weights_.begin(), weights_.end());
}

std::vector<std::size_t> d2_sample(const CenterSet& centers, const Dataset& data, std::size_t count,
                                   Rng& rng) {
    D2Sampler sampler(centers, data);
    std::vector<std::size_t> out(count);
    for (auto& v : out) v = sampler.draw(rng);
    return out;
}

bool check_margin(const Dataset& data, const Labeling& labeling, double gamma) {
    if (labeling.size() != data.size()) {
        throw ContractViolation("check_margin: labeling does not match dataset size");
    }
    const auto groups = labeling.members();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (groups[i].empty()) continue;
        const Point mu = centroid(data, groups[i]);
        double inner = 0.0;
        for (std::size_t x : groups[i]) inner = std::max(inner, std::sqrt(squared_dist(data[x], mu)));
        for (std::size_t y = 0; y < data.size(); ++y) {
            if (labeling[y] == i) continue;
            if (!(gamma * inner < std::sqrt(squared_dist(data[y], mu)))) return false;
        }
    }
    return true;
}

bool check_irreducible(const Dataset& data, std::size_t k, double eps, const OptimalCostFn& optimal_cost) {
    if (k < 2) throw ContractViolation("check_irreducible needs k >= 2");
    if (data.size() > kMaxExactPoints) {
        throw InstanceTooLargeError("check_irreducible: instance too large for exact solver (n = " +
                                    std::to_string(data.size()) + ")");
    }
    const double coarse = optimal_cost(data, k - 1);
    const double fine = optimal_cost(data, k);
    return coarse >= (1.0 + eps) * fine;
}

std::size_t ceil_log2(std::size_t k) {
    if (k == 0) throw ContractViolation("ceil_log2(0)");
    std::size_t r = 0;
    std::size_t v = 1;
    while (v < k) {
        v <<= 1;
        ++r;
    }
    return r;
}

}  // namespace ssac
