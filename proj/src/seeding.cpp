#include "ssac/seeding.hpp"

#include <algorithm>
#include <string>

namespace ssac {
namespace {

void check_k(const Dataset& data, std::size_t k) {
    if (k < 1 || k > data.size()) {
        throw ContractViolation("k must be in [1, n]; got k = " + std::to_string(k) +
                                " for n = " + std::to_string(data.size()));
    }
}

std::size_t uniform_index(const Dataset& data, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, data.size() - 1)(rng);
}

}  // namespace

SeedingResult kmeans_pp(const Dataset& data, std::size_t k, Rng& rng) {
    check_k(data, k);
    SeedingResult out;
    const std::size_t first = uniform_index(data, rng);
    out.chosen_indices.push_back(first);
    out.centers.push_back(data[first]);
    while (out.centers.size() < k) {
        try {
            D2Sampler sampler(out.centers, data);
            const std::size_t x = sampler.draw(rng);
            out.chosen_indices.push_back(x);
            out.centers.push_back(data[x]);
        } catch (const DegenerateDistributionError&) {
            out.degenerate_stop = true;
            break;
        }
    }
    return out;
}

NewClusterAnswer new_cluster(std::span<const std::size_t> chosen, std::size_t x, SameClusterOracle& oracle) {
    NewClusterAnswer out{true, 0};
    for (std::size_t c : chosen) {
        ++out.queries;
        if (oracle.same_cluster(c, x)) {
            out.fresh = false;
            break;
        }
    }
    return out;
}

SeedingResult query_kmeans_pp(const Dataset& data, std::size_t k, SameClusterOracle& oracle, Rng& rng) {
    check_k(data, k);
    if (oracle.size() != data.size()) throw ContractViolation("oracle and dataset sizes differ");
    SeedingResult out;
    const std::size_t first = uniform_index(data, rng);
    out.chosen_indices.push_back(first);
    out.centers.push_back(data[first]);

    const std::size_t attempts = ceil_log2(k);
    for (std::size_t round = 2; round <= k && !out.degenerate_stop; ++round) {
        bool added = false;
        try {
            D2Sampler sampler(out.centers, data);
            for (std::size_t j = 0; j < attempts; ++j) {
                const std::size_t x = sampler.draw(rng);
                const auto reply = new_cluster(out.chosen_indices, x, oracle);
                out.queries_used += reply.queries;
                if (reply.fresh) {
                    out.chosen_indices.push_back(x);
                    out.centers.push_back(data[x]);
                    added = true;
                    break;
                }
            }
        } catch (const DegenerateDistributionError&) {
            out.degenerate_stop = true;
            break;
        }
        if (!added) ++out.rounds_exhausted;
    }
    return out;
}

std::uint64_t query_kmeans_pp_query_cap(std::size_t k) {
    const std::uint64_t m = k > 0 ? k - 1 : 0;
    return m * m * ceil_log2(std::max<std::size_t>(k, 1));
}

PaddedCenters pad_centers(const Dataset& data, CenterSet centers, std::size_t k, Rng& rng) {
    PaddedCenters out{std::move(centers), 0};
    while (out.centers.size() < k) {
        if (out.centers.empty()) {
            out.centers.push_back(data[uniform_index(data, rng)]);
            ++out.padded;
            continue;
        }
        try {
            D2Sampler sampler(out.centers, data);
            out.centers.push_back(data[sampler.draw(rng)]);
            ++out.padded;
        } catch (const DegenerateDistributionError&) {
            break;
        }
    }
    return out;
}

}  // namespace ssac
