#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "ssac/datagen.hpp"
#include "ssac/faulty.hpp"
#include "test_support.hpp"

using namespace ssac;

namespace {

FaultyConfig config(std::size_t k, double q, SampleSizes sizes, std::size_t min_size) {
    FaultyConfig cfg;
    cfg.k = k;
    cfg.eps = 0.5;
    cfg.q = q;
    cfg.sizes = sizes;
    cfg.min_cluster_size = min_size;
    cfg.repeats = 1;
    return cfg;
}

// Perfect-oracle equivalence classes of a multiset, as sorted multisets.
std::vector<std::vector<std::size_t>> true_classes(std::span<const std::size_t> sample, const Labeling& l,
                                                   std::size_t min_size) {
    std::map<std::size_t, std::vector<std::size_t>> by_label;
    for (auto i : sample) by_label[l[i]].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [lab, members] : by_label) {
        if (members.size() < min_size) continue;
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

Labeling planted(std::size_t clusters, std::size_t per) {
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < clusters; ++c) labels.insert(labels.end(), per, c);
    return Labeling(labels, clusters);
}

}  // namespace

TEST_CASE("config defaults") {
    FaultyConfig cfg;
    cfg.k = 2;
    cfg.eps = 0.5;
    CHECK(cfg.faulty_sizes().N == 262144);
    CHECK(cfg.faulty_sizes().M == 256);
    CHECK(cfg.resolved_min_cluster_size() == 256);
    cfg.scale = 1e-4;
    CHECK(cfg.resolved_min_cluster_size() == 3);
    cfg.q = 0.5;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
}

TEST_CASE("noisy graph mirrors the memoized answers") {
    const auto l = planted(3, 10);
    FaultyOracle o(GroundTruth(l), 0.2, 4);
    std::vector<std::size_t> sample;
    for (std::size_t i = 0; i < 30; ++i) sample.push_back((i * 7) % 30);
    sample.push_back(3);
    sample.push_back(3);
    const auto g1 = build_noisy_graph(sample, o);
    const auto g2 = build_noisy_graph(sample, o);
    CHECK(g1.order() == 30);
    CHECK(g1.queries == 30 * 29 / 2);
    CHECK(g1.adjacency == g2.adjacency);
    CHECK(g1.multiplicity[3] == 3);
    for (std::size_t a = 0; a < g1.order(); ++a) {
        CHECK_FALSE(g1.adjacent(a, a));
        for (std::size_t b = 0; b < g1.order(); ++b) CHECK(g1.adjacent(a, b) == g1.adjacent(b, a));
    }
}

TEST_CASE("q = 0 recovers exactly the equivalence classes") {
    Rng rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t clusters = 1 + rng() % 5;
        std::vector<std::size_t> labels(40);
        for (auto& v : labels) v = rng() % clusters;
        const Labeling l(labels, clusters);
        FaultyOracle o(GroundTruth(l), 0.0, trial);
        std::vector<std::size_t> sample(60);
        for (auto& v : sample) v = rng() % 40;
        const auto cfg = config(clusters, 0.0, {1, 4, 1}, 3);
        const auto r = partition_sample(sample, o, cfg);
        CHECK(r.clusters == true_classes(sample, l, 3));
        CHECK(r.queries == o.stats().query_count);
    }
}

TEST_CASE("planted clusters are recovered under noise") {
    const auto l = planted(3, 60);
    std::vector<std::size_t> sample(180);
    for (std::size_t i = 0; i < sample.size(); ++i) sample[i] = i;
    int exact = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        FaultyOracle o(GroundTruth(l), 0.2, seed);
        const auto r = partition_sample(sample, o, config(3, 0.2, {1, 4, 1}, 20));
        exact += r.clusters == true_classes(sample, l, 20);
    }
    CHECK(exact >= 95);
}

TEST_CASE("clusters below the threshold are dropped") {
    const auto l = planted(10, 2);
    FaultyOracle o(GroundTruth(l), 0.0, 1);
    std::vector<std::size_t> sample(20);
    for (std::size_t i = 0; i < 20; ++i) sample[i] = i;
    CHECK(partition_sample(sample, o, config(10, 0.0, {1, 4, 1}, 3)).clusters.empty());
}

TEST_CASE("is_covered") {
    const auto l = planted(2, 50);
    std::vector<std::size_t> first(50), second(50);
    for (std::size_t i = 0; i < 50; ++i) {
        first[i] = i;
        second[i] = 50 + i;
    }
    PerfectOracle p{GroundTruth(l)};
    const std::size_t t0[] = {0};
    auto r = is_covered(t0, first, p);
    CHECK(r.covered);
    CHECK(r.queries == 50);
    CHECK_FALSE(is_covered(t0, second, p).covered);

    const std::size_t both[] = {60, 3};
    r = is_covered(both, first, p);
    CHECK(r.covered);
    CHECK(r.queries == 100);

    CHECK_FALSE(is_covered({}, first, p).covered);

    std::vector<std::size_t> empty;
    CHECK_THROWS_AS(is_covered(t0, empty, p), ContractViolation);
}

TEST_CASE("is_covered majority survives q = 0.2") {
    const auto l = planted(2, 51);
    std::vector<std::size_t> u(50);
    for (std::size_t i = 0; i < 50; ++i) u[i] = i + 1;
    const std::size_t t[] = {0};
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        FaultyOracle o(GroundTruth(l), 0.2, seed);
        hits += is_covered(t, u, o).covered;
    }
    CHECK(hits >= 9990);
}

TEST_CASE("faulty_uniform_sample with q = 0 samples only s's cluster") {
    const Dataset x(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {20, 0}, {22, 0}, {20, 2}, {23, 1}});
    const Labeling l({0, 0, 0, 0, 1, 1, 1, 1}, 2);
    const CenterSet c{{0.5, 0.5}};
    FaultyOracle o(GroundTruth(l), 0.0, 3);
    Rng rng(4);
    const auto cfg = config(2, 0.0, {1, 4, 50000}, 3);
    const auto r = faulty_uniform_sample(x, c, 4, cfg, o, rng);
    CHECK_FALSE(r.sample.empty());
    std::vector<std::size_t> counts(4, 0);
    for (auto i : r.sample) {
        REQUIRE(i >= 4);
        ++counts[i - 4];
    }
    const double p = 0.5 / 128.0 * point_cost(c, x[4]) / cost(c, x);
    for (auto cnt : counts) CHECK(std::abs(cnt - 50000 * p) <= 3.0 * std::sqrt(50000 * p * (1 - p)));
    CHECK(r.queries == o.stats().query_count);
}

TEST_CASE("faulty_uniform_sample returns nothing when s's cluster is missing") {
    const Dataset x(std::vector<Point>{{0}, {1}, {2}, {50}});
    const Labeling l({0, 0, 0, 1}, 2);
    FaultyOracle o(GroundTruth(l), 0.0, 3);
    Rng rng(4);
    // Point 3 sits on the only center, so its cluster has zero draw weight.
    const auto r = faulty_uniform_sample(x, {{50}}, 3, config(2, 0.0, {1, 4, 2000}, 3), o, rng);
    CHECK(r.sample.empty());
}

TEST_CASE("faulty_query_kmeans at q = 0.1 on separated clusters") {
    GenSpec spec;
    spec.k = 3;
    spec.n_per_cluster = 20;
    spec.separation = 40.0;
    spec.seed = 12;
    const auto inst = generate(spec);
    const double planted_cost = [&] {
        double t = 0.0;
        for (const auto& m : inst.labels.members()) t += delta1(inst.data, m);
        return t;
    }();
    auto cfg = config(3, 0.1, {60, 4, 3000}, 5);
    cfg.repeats = 5;
    const auto r = faulty_query_kmeans(
        inst.data, cfg,
        [&](std::size_t rep) { return std::make_unique<FaultyOracle>(GroundTruth(inst.labels), 0.1, 1000 + rep); },
        77);
    for (const auto& run : r.runs) {
        CHECK(run.core.queries == run.oracle_stats.query_count);
        CHECK(run.core.queries <= faulty_query_kmeans_query_cap(cfg));
    }
    CHECK(r.best_run().cost <= 1.5 * planted_cost);
}

TEST_CASE("faulty_uniform_sample at q = 0.1 is uniform over s's cluster") {
    std::vector<Point> pts;
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t i = 0; i < 20; ++i) {
            pts.push_back({30.0 * static_cast<double>(c) + 0.1 * static_cast<double>(i)});
            labels.push_back(c);
        }
    }
    const Dataset x(pts);
    const Labeling l(labels, 2);
    const CenterSet c{{0.95}};
    FaultyOracle o(GroundTruth(l), 0.1, 21);
    Rng rng(22);
    const auto r = faulty_uniform_sample(x, c, 20, config(2, 0.1, {1, 4, 200000}, 10), o, rng);
    std::vector<std::size_t> counts(20, 0);
    for (auto i : r.sample) {
        REQUIRE(i >= 20);
        ++counts[i - 20];
    }
    const std::vector<double> probs(20, 1.0 / 20.0);
    CHECK(r.sample.size() > 400);
    CHECK(testing::chi_square(counts, probs) < testing::chi_square_critical(19, 0.001));
}
