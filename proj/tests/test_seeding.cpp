#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "ssac/datagen.hpp"
#include "ssac/exact.hpp"
#include "ssac/seeding.hpp"
#include "test_support.hpp"

using namespace ssac;

namespace {

Instance separated(std::size_t k, std::size_t per, std::uint64_t seed) {
    GenSpec spec;
    spec.kind = GenKind::GaussianMixture;
    spec.k = k;
    spec.d = 2;
    spec.n_per_cluster = per;
    spec.separation = 40.0;
    spec.spread = 1.0;
    spec.seed = seed;
    return generate(spec);
}

}  // namespace

TEST_CASE("kmeans_pp with k = 1 picks a uniform point") {
    const Dataset x(std::vector<Point>{{0}, {1}, {2}, {3}});
    Rng rng(1);
    std::vector<std::size_t> counts(4, 0);
    for (int t = 0; t < 40000; ++t) {
        const auto r = kmeans_pp(x, 1, rng);
        REQUIRE(r.centers.size() == 1);
        CHECK(r.queries_used == 0);
        ++counts[r.chosen_indices[0]];
    }
    const std::vector<double> probs(4, 0.25);
    CHECK(testing::chi_square(counts, probs) < testing::chi_square_critical(3, 0.001));
}

TEST_CASE("kmeans_pp on k distinct points picks all of them") {
    const Dataset x(std::vector<Point>{{0, 0}, {5, 1}, {-2, 7}, {3, 3}});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        const auto r = kmeans_pp(x, 4, rng);
        CHECK(std::set<std::size_t>(r.chosen_indices.begin(), r.chosen_indices.end()).size() == 4);
        CHECK(cost(r.centers, x) == 0.0);
        CHECK_FALSE(r.degenerate_stop);
    }
}

TEST_CASE("kmeans_pp stops early on duplicate points") {
    const Dataset x(std::vector<Point>{{1, 1}, {1, 1}, {1, 1}});
    Rng rng(3);
    const auto r = kmeans_pp(x, 2, rng);
    CHECK(r.centers.size() == 1);
    CHECK(r.degenerate_stop);
}

TEST_CASE("kmeans_pp expected cost stays within the O(log k) bound") {
    const auto inst = separated(2, 5, 17);
    const double opt = solve_exact(inst.data, 2).optimal_cost;
    Rng rng(8);
    double sum = 0.0;
    for (int t = 0; t < 200; ++t) sum += cost(kmeans_pp(inst.data, 2, rng).centers, inst.data);
    CHECK(sum / 200.0 <= 8.0 * (std::log(2.0) + 2.0) * opt);
}

TEST_CASE("new_cluster") {
    PerfectOracle o(GroundTruth(Labeling({0, 1, 2, 3, 0}, 4)));
    auto r = new_cluster({}, 1, o);
    CHECK(r.fresh);
    CHECK(r.queries == 0);

    const std::vector<std::size_t> chosen{0, 1, 2};
    r = new_cluster(chosen, 4, o);
    CHECK_FALSE(r.fresh);
    CHECK(r.queries == 1);

    r = new_cluster(chosen, 3, o);
    CHECK(r.fresh);
    CHECK(r.queries == 3);
    CHECK(o.stats().query_count == 4);
}

TEST_CASE("query_kmeans_pp on two singletons") {
    const Dataset x(std::vector<Point>{{0, 0}, {10, 0}});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PerfectOracle o(GroundTruth(Labeling({0, 1}, 2)));
        Rng rng(seed);
        const auto r = query_kmeans_pp(x, 2, o, rng);
        CHECK(r.centers.size() == 2);
        CHECK(cost(r.centers, x) == 0.0);
        CHECK(r.queries_used <= 1);
        CHECK(r.queries_used == o.stats().query_count);
    }
}

TEST_CASE("query_kmeans_pp covers distinct clusters and respects the query cap") {
    for (std::size_t k : {2, 3, 4, 5}) {
        const auto inst = separated(k, 6, 100 + k);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            PerfectOracle o{GroundTruth(inst.labels)};
            Rng rng(seed);
            const auto r = query_kmeans_pp(inst.data, k, o, rng);
            CHECK(r.queries_used <= query_kmeans_pp_query_cap(k));
            CHECK(r.queries_used == o.stats().query_count);
            std::set<std::size_t> labels;
            for (auto i : r.chosen_indices) labels.insert(inst.labels[i]);
            CHECK(labels.size() == r.chosen_indices.size());
            CHECK(r.centers.size() + r.rounds_exhausted == k);
        }
    }
}

TEST_CASE("query_kmeans_pp mean cost within 24 Delta_3") {
    const auto inst = separated(3, 4, 5);
    const double opt = solve_exact(inst.data, 3).optimal_cost;
    Rng rng(77);
    double sum = 0.0;
    for (int t = 0; t < 500; ++t) {
        PerfectOracle o{GroundTruth(inst.labels)};
        auto r = query_kmeans_pp(inst.data, 3, o, rng);
        sum += cost(pad_centers(inst.data, r.centers, 3, rng).centers, inst.data);
    }
    CHECK(sum / 500.0 <= 24.0 * opt);
}

TEST_CASE("pad_centers tops up to k and never raises cost") {
    const auto inst = separated(3, 4, 9);
    Rng rng(4);
    const CenterSet one{inst.data[0]};
    const auto padded = pad_centers(inst.data, one, 3, rng);
    CHECK(padded.centers.size() == 3);
    CHECK(padded.padded == 2);
    CHECK(cost(padded.centers, inst.data) <= cost(one, inst.data));

    const auto empty = pad_centers(inst.data, {}, 2, rng);
    CHECK(empty.centers.size() == 2);

    const Dataset same(std::vector<Point>{{1}, {1}});
    CHECK(pad_centers(same, {{1}}, 2, rng).centers.size() == 1);
}

TEST_CASE("k out of range") {
    const Dataset x(std::vector<Point>{{0}, {1}});
    Rng rng(0);
    CHECK_THROWS_AS(kmeans_pp(x, 3, rng), ContractViolation);
    CHECK_THROWS_AS(kmeans_pp(x, 0, rng), ContractViolation);
}
