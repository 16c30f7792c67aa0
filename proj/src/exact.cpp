#include "ssac/exact.hpp"

#include <limits>
#include <string>

namespace ssac {
namespace {

struct Block {
    std::vector<double> sum;
    double sum_sq = 0.0;
    std::size_t count = 0;

    double cost() const {
        if (count == 0) return 0.0;
        double norm = 0.0;
        for (double v : sum) norm += v * v;
        return sum_sq - norm / static_cast<double>(count);
    }
};

class Enumerator {
public:
    Enumerator(const std::vector<Point>& pts, std::size_t k, double tol)
        : pts_(pts), k_(k), tol_(tol), blocks_(k), labels_(pts.size(), 0) {
        for (auto& b : blocks_) b.sum.assign(pts.front().size(), 0.0);
        sq_norm_.reserve(pts.size());
        for (const auto& p : pts) {
            double s = 0.0;
            for (double v : p) s += v * v;
            sq_norm_.push_back(s);
        }
    }

    void run() { visit(0, 0, 0.0); }

    double best_cost() const { return best_; }
    const std::vector<std::size_t>& best_labels() const { return best_labels_; }

private:
    void add(std::size_t b, std::size_t i, double sign) {
        auto& blk = blocks_[b];
        for (std::size_t j = 0; j < blk.sum.size(); ++j) blk.sum[j] += sign * pts_[i][j];
        blk.sum_sq += sign * sq_norm_[i];
        blk.count = sign > 0 ? blk.count + 1 : blk.count - 1;
    }

    // Adding a point never lowers a block's 1-means cost, so the partial cost is a lower
    // bound on every completion.
    void visit(std::size_t i, std::size_t used, double partial) {
        if (partial >= best_ - tol_) return;
        if (i == pts_.size()) {
            best_ = partial;
            best_labels_ = labels_;
            return;
        }
        const std::size_t limit = std::min(used + 1, k_);
        for (std::size_t b = 0; b < limit; ++b) {
            const double before = blocks_[b].cost();
            add(b, i, 1.0);
            labels_[i] = b;
            const double after = std::max(blocks_[b].cost(), before);
            visit(i + 1, std::max(used, b + 1), partial - before + after);
            add(b, i, -1.0);
        }
    }

    const std::vector<Point>& pts_;
    std::size_t k_;
    double tol_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> labels_;
    std::vector<double> sq_norm_;
    double best_ = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_labels_;
};

}  // namespace

ExactSolution solve_exact(const Dataset& data, std::size_t k) {
    if (data.size() > kMaxExactPoints) {
        throw InstanceTooLargeError("instance too large for exact solver: n = " + std::to_string(data.size()) +
                                    " > " + std::to_string(kMaxExactPoints));
    }
    if (k < 1 || k > data.size()) throw ContractViolation("solve_exact needs 1 <= k <= n");

    // Center the data so the incremental sum-of-squares form does not cancel badly.
    const Point mu = centroid(data.points());
    std::vector<Point> shifted = data.points();
    for (auto& p : shifted) {
        for (std::size_t j = 0; j < p.size(); ++j) p[j] -= mu[j];
    }
    double scale = 0.0;
    for (const auto& p : shifted) {
        for (double v : p) scale += v * v;
    }
    const double tol = 1e-10 * scale + 1e-300;

    Enumerator e(shifted, k, tol);
    e.run();

    const auto& labels = e.best_labels();
    std::size_t blocks = 0;
    for (std::size_t v : labels) blocks = std::max(blocks, v + 1);

    ExactSolution out;
    out.labeling = Labeling(labels, blocks);
    double total = 0.0;
    for (const auto& members : out.labeling.members()) {
        out.centers.push_back(centroid(data, members));
        total += delta1(data, members);
    }
    out.optimal_cost = total;
    return out;
}

std::vector<double> delta_sequence(const Dataset& data, std::size_t k_max) {
    if (data.size() > kMaxExactPoints) {
        throw InstanceTooLargeError("instance too large for exact solver: n = " + std::to_string(data.size()));
    }
    if (k_max < 1 || k_max > data.size()) throw ContractViolation("delta_sequence needs 1 <= k_max <= n");
    std::vector<double> out;
    for (std::size_t i = 1; i <= k_max; ++i) out.push_back(solve_exact(data, i).optimal_cost);
    return out;
}

}  // namespace ssac
