#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssac/oracle.hpp"

using namespace ssac;

TEST_CASE("perfect oracle answers from labels") {
    PerfectOracle o(GroundTruth(Labeling({0, 0, 1}, 2)));
    CHECK(o.same_cluster(0, 1));
    CHECK_FALSE(o.same_cluster(0, 2));
    CHECK(o.same_cluster(2, 2));
    CHECK(o.stats().query_count == 3);
    CHECK_THROWS_AS(o.same_cluster(0, 3), ContractViolation);
}

TEST_CASE("stats count queries and distinct pairs") {
    PerfectOracle o(GroundTruth(Labeling({0, 1, 1}, 2)));
    CHECK(o.stats().query_count == 0);
    CHECK(o.stats().distinct_pair_count == 0);
    o.same_cluster(0, 1);
    o.same_cluster(1, 0);
    o.same_cluster(1, 2);
    CHECK(o.stats().query_count == 3);
    CHECK(o.stats().distinct_pair_count == 2);
    o.reset_stats();
    CHECK(o.stats().query_count == 0);
    CHECK(o.stats().distinct_pair_count == 0);
}

TEST_CASE("perfect oracle is symmetric, reflexive and transitive") {
    const Labeling l({0, 2, 1, 0, 2, 2, 1, 0}, 3);
    PerfectOracle o{GroundTruth(l)};
    for (std::size_t i = 0; i < l.size(); ++i) {
        CHECK(o.same_cluster(i, i));
        for (std::size_t j = 0; j < l.size(); ++j) {
            CHECK(o.same_cluster(i, j) == o.same_cluster(j, i));
            for (std::size_t m = 0; m < l.size(); ++m) {
                if (o.same_cluster(i, j) && o.same_cluster(j, m)) CHECK(o.same_cluster(i, m));
            }
        }
    }
}

TEST_CASE("faulty oracle rejects q outside [0, 1/2)") {
    const GroundTruth gt(Labeling({0, 1}, 2));
    CHECK_THROWS_AS(FaultyOracle(gt, 0.5, 1), ContractViolation);
    CHECK_THROWS_AS(FaultyOracle(gt, -0.1, 1), ContractViolation);
    CHECK_NOTHROW(FaultyOracle(gt, 0.0, 1));
}

TEST_CASE("faulty oracle with q = 0 matches the perfect oracle") {
    const Labeling l({0, 1, 1, 0, 2, 2}, 3);
    PerfectOracle p{GroundTruth(l)};
    FaultyOracle f(GroundTruth(l), 0.0, 99);
    for (std::size_t i = 0; i < l.size(); ++i) {
        for (std::size_t j = 0; j < l.size(); ++j) CHECK(f.same_cluster(i, j) == p.same_cluster(i, j));
    }
}

TEST_CASE("faulty answers are memoized and symmetric") {
    std::vector<std::size_t> labels(200);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 4;
    FaultyOracle f(GroundTruth(Labeling(labels, 4)), 0.3, 7);
    for (std::size_t i = 0; i < 50; ++i) {
        const std::size_t j = (i * 37 + 11) % 200;
        const bool first = f.same_cluster(i, j);
        for (int r = 0; r < 100; ++r) {
            CHECK(f.same_cluster(i, j) == first);
            CHECK(f.same_cluster(j, i) == first);
        }
    }
    for (std::size_t i = 0; i < 200; ++i) CHECK(f.same_cluster(i, i));
}

TEST_CASE("faulty flip rate") {
    const std::size_t n = 1000;
    std::vector<std::size_t> labels(n, 0);
    FaultyOracle f(GroundTruth(Labeling(labels, 1)), 0.3, 2024);
    std::size_t pairs = 0;
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < n && pairs < 100000; ++i) {
        for (std::size_t j = i + 1; j < n && pairs < 100000; ++j) {
            ++pairs;
            wrong += !f.same_cluster(i, j);
        }
    }
    const double rate = static_cast<double>(wrong) / static_cast<double>(pairs);
    CHECK(std::abs(rate - 0.3) <= 0.01);
    CHECK(std::abs(rate - 0.3) <= 3.0 * std::sqrt(0.3 * 0.7 / static_cast<double>(pairs)));
    CHECK(f.stats().distinct_pair_count == pairs);
    CHECK(f.cached_pairs() == pairs);
}
