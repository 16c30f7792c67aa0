#include "ssac/faulty.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ssac/parallel.hpp"
#include "ssac/seeding.hpp"

namespace ssac {
namespace {

constexpr std::size_t kMaxRefineIterations = 50;

struct Distinct {
    std::vector<std::size_t> values;
    std::vector<std::size_t> counts;
};

Distinct distinct_with_counts(std::span<const std::size_t> sample) {
    std::map<std::size_t, std::size_t> tally;
    for (std::size_t v : sample) ++tally[v];
    Distinct out;
    for (const auto& [v, c] : tally) {
        out.values.push_back(v);
        out.counts.push_back(c);
    }
    return out;
}

// Greedy dense-cluster peeling: seed with the neighborhood of the heaviest remaining
// vertex, then keep exactly the vertices adjacent to more than half of the candidate mass.
std::vector<std::vector<std::size_t>> peel(const NoisyGraph& g) {
    const std::size_t n = g.order();
    std::vector<bool> assigned(n, false);
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
            if (g.adjacent(v, u)) degree[v] += g.multiplicity[u];
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    std::size_t remaining = n;

    while (remaining > 0) {
        std::size_t seed = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!assigned[v] && (seed == n || degree[v] > degree[seed])) seed = v;
        }

        std::vector<std::size_t> members{seed};
        for (std::size_t u = 0; u < n; ++u) {
            if (!assigned[u] && g.adjacent(seed, u)) members.push_back(u);
        }
        std::sort(members.begin(), members.end());

        for (std::size_t it = 0; it < kMaxRefineIterations; ++it) {
            std::vector<bool> in(n, false);
            std::size_t total = 0;
            for (std::size_t u : members) {
                in[u] = true;
                total += g.multiplicity[u];
            }
            std::vector<std::size_t> next;
            for (std::size_t v = 0; v < n; ++v) {
                if (assigned[v]) continue;
                const std::size_t others = total - (in[v] ? g.multiplicity[v] : 0);
                if (others == 0) {
                    if (in[v]) next.push_back(v);
                    continue;
                }
                std::size_t adj = 0;
                for (std::size_t u : members) {
                    if (u != v && g.adjacent(v, u)) adj += g.multiplicity[u];
                }
                if (2 * adj > others) next.push_back(v);
            }
            if (next == members) break;
            members = std::move(next);
        }

        if (members.empty()) members.push_back(seed);
        for (std::size_t v : members) {
            assigned[v] = true;
            for (std::size_t u = 0; u < n; ++u) {
                if (g.adjacent(v, u)) degree[u] -= g.multiplicity[v];
            }
        }
        remaining -= members.size();
        groups.push_back(std::move(members));
    }
    return groups;
}

}  // namespace

void FaultyConfig::validate() const {
    PtasConfig::validate();
    if (!(q >= 0.0 && q < 0.5)) throw ContractViolation("q must be < 1/2 (and >= 0)");
    if (min_cluster_size && *min_cluster_size < 1) throw ContractViolation("min_cluster_size must be positive");
}

SampleSizes FaultyConfig::faulty_sizes() const {
    if (sizes) return *sizes;
    SampleSizes s = sample_sizes();
    const double kd = static_cast<double>(k);
    s.N = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(8192.0 * kd * kd * kd / (eps * eps) * scale - 1e-9)));
    return s;
}

std::size_t FaultyConfig::resolved_min_cluster_size() const {
    if (min_cluster_size) return *min_cluster_size;
    const double v = std::ceil(64.0 * static_cast<double>(k) / eps * scale - 1e-9);
    return std::max<std::size_t>(3, static_cast<std::size_t>(std::max(v, 0.0)));
}

FaultyConfig effective_config(const FaultyConfig& cfg) {
    FaultyConfig out = cfg;
    static_cast<PtasConfig&>(out) = effective_config(static_cast<const PtasConfig&>(cfg));
    return out;
}

NoisyGraph build_noisy_graph(std::span<const std::size_t> sample, SameClusterOracle& oracle) {
    const auto d = distinct_with_counts(sample);
    NoisyGraph g;
    g.vertices = d.values;
    g.multiplicity = d.counts;
    const std::size_t n = g.order();
    g.adjacency.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const bool same = oracle.same_cluster(g.vertices[a], g.vertices[b]);
            ++g.queries;
            g.adjacency[a * n + b] = g.adjacency[b * n + a] = same ? 1 : 0;
        }
    }
    return g;
}

std::vector<std::vector<std::size_t>> recover_clusters(const NoisyGraph& g, double q, std::size_t min_mass) {
    const std::size_t n = g.order();
    if (n == 0) return {};

    const auto groups = peel(g);
    std::vector<std::size_t> owner(n);
    for (std::size_t c = 0; c < groups.size(); ++c) {
        for (std::size_t v : groups[c]) owner[v] = c;
    }
    std::size_t group_count = groups.size();

    // Plurality reassignment: each vertex moves to the group with the largest adjacency
    // excess (2 * adjacent members - other members) among groups it is adjacent to with a
    // fraction above `floor`, else it stands alone. `floor` sits a quarter of the way
    // from the outsider rate q to 1/2. Members are counted once each: a pair contributes
    // one answer however often its endpoints were drawn.
    const double floor_fraction = q + (1.0 - 2.0 * q) / 4.0;
    for (std::size_t it = 0; it < kMaxRefineIterations; ++it) {
        std::vector<std::size_t> population(group_count, 0);
        for (std::size_t v = 0; v < n; ++v) ++population[owner[v]];

        std::vector<std::size_t> next = owner;
        std::size_t next_count = group_count;
        std::vector<std::size_t> adj(group_count);
        for (std::size_t v = 0; v < n; ++v) {
            std::fill(adj.begin(), adj.end(), 0);
            for (std::size_t u = 0; u < n; ++u) {
                if (u != v && g.adjacent(v, u)) ++adj[owner[u]];
            }
            std::optional<std::size_t> best;
            double best_score = 0.0;
            for (std::size_t c = 0; c < group_count; ++c) {
                const std::size_t others = population[c] - (owner[v] == c ? 1 : 0);
                if (others == 0) continue;
                const double a = static_cast<double>(adj[c]);
                if (!(a > floor_fraction * static_cast<double>(others))) continue;
                const double score = 2.0 * a - static_cast<double>(others);
                if (!best || score > best_score) {
                    best = c;
                    best_score = score;
                }
            }
            if (best) {
                next[v] = *best;
            } else if (population[owner[v]] > 1) {
                next[v] = next_count++;
            }
        }
        if (next == owner) break;
        owner = std::move(next);
        group_count = next_count;
    }

    std::vector<std::vector<std::size_t>> by_group(group_count);
    for (std::size_t v = 0; v < n; ++v) by_group[owner[v]].push_back(v);
    std::vector<std::vector<std::size_t>> out;
    for (auto& members : by_group) {
        std::size_t m = 0;
        for (std::size_t v : members) m += g.multiplicity[v];
        if (!members.empty() && m >= min_mass) out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

PartitionResult partition_sample(std::span<const std::size_t> sample, SameClusterOracle& oracle,
                                 const FaultyConfig& cfg) {
    if (!(cfg.q >= 0.0 && cfg.q < 0.5)) throw ContractViolation("q must be < 1/2 (and >= 0)");
    const NoisyGraph g = build_noisy_graph(sample, oracle);
    PartitionResult out;
    out.queries = g.queries;
    for (const auto& members : recover_clusters(g, cfg.q, cfg.resolved_min_cluster_size())) {
        std::vector<std::size_t> cluster;
        for (std::size_t v : members) cluster.insert(cluster.end(), g.multiplicity[v], g.vertices[v]);
        out.clusters.push_back(std::move(cluster));
    }
    return out;
}

CoverageAnswer is_covered(std::span<const std::size_t> targets, std::span<const std::size_t> points,
                          SameClusterOracle& oracle) {
    if (points.empty()) throw ContractViolation("is_covered needs a non-empty point set");
    const auto d = distinct_with_counts(points);
    CoverageAnswer out;
    for (std::size_t t : targets) {
        std::size_t yes = 0;
        for (std::size_t v : d.values) {
            ++out.queries;
            if (oracle.same_cluster(t, v)) ++yes;
        }
        if (2 * yes > d.values.size()) {
            out.covered = true;
            break;
        }
    }
    return out;
}

UniformSampleResult faulty_uniform_sample(const Dataset& data, const CenterSet& centers, std::size_t s,
                                          const FaultyConfig& cfg, SameClusterOracle& oracle, Rng& rng) {
    data.at(s);
    const std::size_t L = cfg.faulty_sizes().L;
    D2Sampler sampler(centers, data);
    std::vector<std::size_t> drawn(L);
    for (auto& v : drawn) v = sampler.draw(rng);

    UniformSampleResult out;
    const auto parts = partition_sample(drawn, oracle, cfg);
    out.queries += parts.queries;
    const std::size_t target[] = {s};
    for (const auto& part : parts.clusters) {
        const auto cov = is_covered(target, part, oracle);
        out.queries += cov.queries;
        if (!cov.covered) continue;
        for (std::size_t x : part) {
            bool clamped = false;
            const double p = acceptance_probability(cfg.eps, centers, data, s, x, &clamped);
            if (clamped) ++out.clamp_count;
            if (bernoulli(rng, p)) out.sample.push_back(x);
        }
    }
    return out;
}

UncoveredClusterResult faulty_uncovered_cluster(const Dataset& data, const CenterSet& centers,
                                                std::span<const std::size_t> sample,
                                                std::span<const std::size_t> representatives,
                                                const FaultyConfig& cfg, SameClusterOracle& oracle) {
    UncoveredClusterResult out;
    auto& slots = out.buckets;
    for (std::size_t r : representatives) slots.push_back({r});

    const auto parts = partition_sample(sample, oracle, cfg);
    out.queries += parts.queries;
    for (const auto& part : parts.clusters) {
        const auto cov = is_covered(representatives, part, oracle);
        out.queries += cov.queries;
        if (!cov.covered && slots.size() < cfg.k) slots.push_back(part);
    }

    std::optional<std::size_t> largest;
    for (std::size_t b = representatives.size(); b < slots.size(); ++b) {
        if (!largest || slots[b].size() > slots[*largest].size()) largest = b;
    }
    if (!largest) return out;

    std::size_t best = slots[*largest].front();
    double best_cost = centers.empty() ? 0.0 : point_cost(centers, data[best]);
    for (std::size_t s : slots[*largest]) {
        const double c = centers.empty() ? 0.0 : point_cost(centers, data[s]);
        if (c < best_cost || (c == best_cost && s < best)) {
            best = s;
            best_cost = c;
        }
    }
    out.representative = best;
    return out;
}

CoreResult faulty_query_kmeans_core(const Dataset& data, const FaultyConfig& cfg, SameClusterOracle& oracle,
                                    Rng& rng) {
    cfg.validate();
    if (oracle.size() != data.size()) throw ContractViolation("oracle and dataset sizes differ");
    const SampleSizes sizes = cfg.faulty_sizes();
    CoreResult out;

    for (std::size_t round = 1; round <= cfg.k; ++round) {
        RoundTrace tr;
        tr.round = round;

        std::vector<std::size_t> sample;
        try {
            D2Sampler sampler(out.centers, data);
            sample.resize(sizes.N);
            for (auto& v : sample) v = sampler.draw(rng);
        } catch (const DegenerateDistributionError&) {
            out.degenerate_stop = true;
            break;
        }
        tr.sample_size = sample.size();

        const auto uc = faulty_uncovered_cluster(data, out.centers, sample, out.representatives, cfg, oracle);
        tr.queries += uc.queries;
        tr.representative = uc.representative;
        if (uc.representative) {
            const auto us = faulty_uniform_sample(data, out.centers, *uc.representative, cfg, oracle, rng);
            tr.queries += us.queries;
            tr.clamp_count = us.clamp_count;
            tr.accepted_size = us.sample.size();
            if (us.sample.size() >= sizes.M) {
                tr.accepted = true;
                out.representatives.push_back(*uc.representative);
                out.centers.push_back(centroid(data, us.sample));
            }
        }
        if (!tr.accepted) ++out.failed_rounds;
        out.queries += tr.queries;
        out.trace.push_back(tr);
    }
    return out;
}

std::uint64_t faulty_query_kmeans_query_cap(const FaultyConfig& cfg) {
    const auto s = cfg.faulty_sizes();
    const std::uint64_t k = cfg.k;
    return k * (s.N * s.N + k * s.N + s.L * s.L + s.L);
}

BestOfRuns faulty_query_kmeans(const Dataset& data, const FaultyConfig& cfg, const OracleFactory& make_oracle,
                               std::uint64_t algo_seed, std::size_t threads) {
    cfg.validate();
    const FaultyConfig eff = effective_config(cfg);
    BestOfRuns out;
    out.runs.resize(cfg.repeats);
    parallel_for(cfg.repeats, threads, [&](std::size_t r) {
        auto oracle = make_oracle(r);
        RunOutcome& run = out.runs[r];
        run.algo_seed = derive_seed(algo_seed, r);
        Rng rng(run.algo_seed);
        run.core = faulty_query_kmeans_core(data, eff, *oracle, rng);
        run.oracle_stats = oracle->stats();
        auto padded = pad_centers(data, run.core.centers, cfg.k, rng);
        run.reported_centers = std::move(padded.centers);
        run.padded = padded.padded;
        run.cost = cost(run.reported_centers, data);
    });
    out.best = best_run_index(out.runs);
    return out;
}

}  // namespace ssac
