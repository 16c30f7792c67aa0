#include "ssac/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ssac {
namespace {

constexpr int kMarginRetries = 10;

// Regular simplex with unit edge in k-1 dimensions: e_i - centroid, expressed in an
// orthonormal basis of the hyperplane sum(x) = 0 (Gram-Schmidt).
std::vector<Point> simplex_vertices(std::size_t k) {
    std::vector<Point> verts(k, Point(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) verts[i][j] = (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(k);
    }
    std::vector<Point> basis;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        Point b = verts[i];
        for (const auto& e : basis) {
            double dot = 0.0;
            for (std::size_t j = 0; j < k; ++j) dot += b[j] * e[j];
            for (std::size_t j = 0; j < k; ++j) b[j] -= dot * e[j];
        }
        double norm = 0.0;
        for (double v : b) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : b) v /= norm;
        basis.push_back(std::move(b));
    }
    std::vector<Point> out(k, Point(k - 1, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t a = 0; a + 1 < k; ++a) {
            double dot = 0.0;
            for (std::size_t j = 0; j < k; ++j) dot += verts[i][j] * basis[a][j];
            out[i][a] = dot / std::sqrt(2.0);
        }
    }
    return out;
}

Point gaussian_offset(std::size_t d, double sigma, Rng& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    Point p(d);
    for (double& v : p) v = sigma * n01(rng);
    return p;
}

Point ball_offset(std::size_t d, double radius, Rng& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    Point dir(d);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (double& v : dir) {
            v = n01(rng);
            norm += v * v;
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double r = radius * std::pow(u, 1.0 / static_cast<double>(d));
    for (double& v : dir) v = v / norm * r;
    return dir;
}

Instance emit(const std::vector<Point>& centers, const GenSpec& spec, double spread, bool ball, Rng& rng) {
    std::vector<Point> pts;
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        for (std::size_t i = 0; i < spec.n_per_cluster; ++i) {
            Point off = ball ? ball_offset(spec.d, spread, rng) : gaussian_offset(spec.d, spread, rng);
            for (std::size_t j = 0; j < spec.d; ++j) off[j] += centers[c][j];
            pts.push_back(std::move(off));
            labels.push_back(c);
        }
    }
    return Instance{Dataset(std::move(pts)), Labeling(std::move(labels), centers.size())};
}

}  // namespace

std::string to_string(GenKind kind) {
    switch (kind) {
        case GenKind::GaussianMixture: return "gaussian-mixture";
        case GenKind::MarginBalls: return "margin-balls";
        case GenKind::Grid: return "grid";
        case GenKind::Line: return "line";
    }
    return "unknown";
}

std::optional<GenKind> parse_gen_kind(const std::string& name) {
    for (auto k : {GenKind::GaussianMixture, GenKind::MarginBalls, GenKind::Grid, GenKind::Line}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

void GenSpec::validate() const {
    if (k < 1) throw ContractViolation("k must be at least 1");
    if (d < 1) throw ContractViolation("d must be at least 1");
    if (n_per_cluster < 1) throw ContractViolation("n_per_cluster must be at least 1");
    if (!(separation > 0.0)) throw ContractViolation("separation must be positive");
    if (!(spread >= 0.0)) throw ContractViolation("sigma/radius must be non-negative");
    if (kind == GenKind::MarginBalls && !(gamma > 1.0)) {
        throw ContractViolation("gamma must be > 1 (gamma-margin property requires gamma > 1)");
    }
}

std::vector<Point> place_centers(const GenSpec& spec, Rng& rng) {
    const std::size_t k = spec.k;
    const std::size_t d = spec.d;
    std::vector<Point> centers;

    if (spec.kind == GenKind::Line) {
        for (std::size_t c = 0; c < k; ++c) {
            Point p(d, 0.0);
            p[0] = spec.separation * static_cast<double>(c);
            centers.push_back(std::move(p));
        }
        return centers;
    }

    if (spec.kind == GenKind::Grid) {
        std::size_t side = 1;
        while (true) {
            std::size_t cap = 1;
            for (std::size_t j = 0; j < d && cap < k; ++j) cap *= side;
            if (cap >= k) break;
            ++side;
        }
        for (std::size_t c = 0; c < k; ++c) {
            Point p(d, 0.0);
            std::size_t rest = c;
            for (std::size_t j = 0; j < d; ++j) {
                p[j] = spec.separation * static_cast<double>(rest % side);
                rest /= side;
            }
            centers.push_back(std::move(p));
        }
        return centers;
    }

    if (k == 1) return {Point(d, 0.0)};

    if (d >= k - 1) {
        for (const auto& v : simplex_vertices(k)) {
            Point p(d, 0.0);
            for (std::size_t j = 0; j + 1 < k; ++j) p[j] = spec.separation * v[j];
            centers.push_back(std::move(p));
        }
        return centers;
    }

    // Too few dimensions for a simplex: rejection-sample centers in a growing box.
    double box = spec.separation * static_cast<double>(k);
    while (centers.size() < k) {
        std::size_t tries = 0;
        centers.clear();
        while (centers.size() < k && tries < 10000) {
            ++tries;
            Point p(d);
            for (double& v : p) v = std::uniform_real_distribution<double>(-box, box)(rng);
            bool ok = true;
            for (const auto& c : centers) {
                if (squared_dist(c, p) < spec.separation * spec.separation) {
                    ok = false;
                    break;
                }
            }
            if (ok) centers.push_back(std::move(p));
        }
        box *= 2.0;
    }
    return centers;
}

Instance generate(const GenSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const auto centers = place_centers(spec, rng);

    if (spec.kind != GenKind::MarginBalls) return emit(centers, spec, spec.spread, false, rng);

    // gamma * r < separation - r keeps every ball inside the margin in the limit; the
    // emitted sample is still verified since empirical means drift from the centers.
    double radius = std::min(spec.spread, 0.99 * spec.separation / (spec.gamma + 1.0));
    for (int attempt = 0; attempt < kMarginRetries; ++attempt) {
        Instance inst = emit(centers, spec, radius, true, rng);
        if (check_margin(inst.data, inst.labels, spec.gamma)) return inst;
        radius *= 0.5;
    }
    throw GenerationError("could not satisfy the gamma-margin property after " + std::to_string(kMarginRetries) +
                          " attempts (gamma = " + std::to_string(spec.gamma) + ")");
}

}  // namespace ssac
