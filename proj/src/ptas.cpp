#include "ssac/ptas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ssac/parallel.hpp"
#include "ssac/seeding.hpp"

namespace ssac {
namespace {

std::size_t scaled_ceil(double value, double scale, std::size_t floor_at) {
    const double v = std::ceil(value * scale - 1e-9);
    return std::max<std::size_t>(floor_at, static_cast<std::size_t>(std::max(v, 0.0)));
}

}  // namespace

void PtasConfig::validate() const {
    if (k < 1) throw ContractViolation("k must be at least 1");
    if (!(eps > 0.0 && eps <= 0.5)) throw ContractViolation("eps must be in (0, 1/2]");
    if (!(scale > 0.0 && scale <= 1.0)) throw ContractViolation("scale must be in (0, 1]");
    if (repeats < 1) throw ContractViolation("repeats must be at least 1");
    if (sizes && (sizes->N < 1 || sizes->M < 1 || sizes->L < 1)) {
        throw ContractViolation("sample sizes must be positive");
    }
}

SampleSizes PtasConfig::sample_sizes() const {
    if (sizes) return *sizes;
    const double kd = static_cast<double>(k);
    SampleSizes s;
    s.N = scaled_ceil(4096.0 * kd * kd * kd / (eps * eps), scale, 1);
    s.M = scaled_ceil(64.0 * kd / eps, scale, 4);
    s.L = scaled_ceil(8388608.0 * kd * kd / (eps * eps * eps * eps), scale, 1);
    return s;
}

double general_mode_eps(double eps, std::size_t k) {
    return eps / ((4.0 + eps / 2.0) * static_cast<double>(k));
}

PtasConfig effective_config(const PtasConfig& cfg) {
    PtasConfig out = cfg;
    if (cfg.general_mode) {
        out.eps = general_mode_eps(cfg.eps, cfg.k);
        out.general_mode = false;
    }
    return out;
}

UncoveredClusterResult uncovered_cluster(const Dataset& data, const CenterSet& centers,
                                         std::span<const std::size_t> sample,
                                         std::span<const std::size_t> representatives, std::size_t k,
                                         SameClusterOracle& oracle) {
    UncoveredClusterResult out;
    auto& buckets = out.buckets;
    for (std::size_t r : representatives) buckets.push_back({r});

    for (std::size_t s : sample) {
        bool placed = false;
        for (auto& bucket : buckets) {
            ++out.queries;
            if (oracle.same_cluster(s, bucket.front())) {
                bucket.push_back(s);
                placed = true;
                break;
            }
        }
        // Only k slots exist; a point matching none of k full buckets is dropped.
        if (!placed && buckets.size() < k) buckets.push_back({s});
    }

    std::optional<std::size_t> largest;
    for (std::size_t b = representatives.size(); b < buckets.size(); ++b) {
        if (!largest || buckets[b].size() > buckets[*largest].size()) largest = b;
    }
    if (!largest) return out;

    std::size_t best = buckets[*largest].front();
    double best_cost = centers.empty() ? 0.0 : point_cost(centers, data[best]);
    for (std::size_t s : buckets[*largest]) {
        const double c = centers.empty() ? 0.0 : point_cost(centers, data[s]);
        if (c < best_cost || (c == best_cost && s < best)) {
            best = s;
            best_cost = c;
        }
    }
    out.representative = best;
    return out;
}

double acceptance_probability(double eps, const CenterSet& centers, const Dataset& data, std::size_t s,
                              std::size_t x, bool* clamped) {
    if (clamped) *clamped = false;
    double ratio = 1.0;
    if (!centers.empty()) {
        const double cs = point_cost(centers, data[s]);
        if (cs == 0.0) return 0.0;
        const double cx = point_cost(centers, data[x]);
        ratio = cx > 0.0 ? cs / cx : std::numeric_limits<double>::infinity();
    }
    const double p = eps / 128.0 * ratio;
    if (p > 1.0) {
        if (clamped) *clamped = true;
        return 1.0;
    }
    return p;
}

UniformSampleResult uniform_sample(const Dataset& data, const CenterSet& centers, std::size_t s,
                                   const PtasConfig& cfg, SameClusterOracle& oracle, Rng& rng) {
    data.at(s);
    const std::size_t L = cfg.sample_sizes().L;
    D2Sampler sampler(centers, data);
    UniformSampleResult out;
    for (std::size_t it = 0; it < L; ++it) {
        const std::size_t x = sampler.draw(rng);
        ++out.queries;
        if (!oracle.same_cluster(s, x)) continue;
        bool clamped = false;
        const double p = acceptance_probability(cfg.eps, centers, data, s, x, &clamped);
        if (clamped) ++out.clamp_count;
        if (bernoulli(rng, p)) out.sample.push_back(x);
    }
    return out;
}

CoreResult query_kmeans_core(const Dataset& data, const PtasConfig& cfg, SameClusterOracle& oracle, Rng& rng) {
    cfg.validate();
    if (oracle.size() != data.size()) throw ContractViolation("oracle and dataset sizes differ");
    const SampleSizes sizes = cfg.sample_sizes();
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

        const auto uc = uncovered_cluster(data, out.centers, sample, out.representatives, cfg.k, oracle);
        tr.queries += uc.queries;
        tr.representative = uc.representative;
        if (uc.representative) {
            const auto us = uniform_sample(data, out.centers, *uc.representative, cfg, oracle, rng);
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

std::uint64_t query_kmeans_query_cap(const PtasConfig& cfg) {
    const auto s = cfg.sample_sizes();
    const std::uint64_t k = cfg.k;
    return k * (k * s.N + s.L);
}

std::size_t best_run_index(std::span<const RunOutcome> runs) {
    if (runs.empty()) throw ContractViolation("no runs to choose from");
    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        if (runs[i].cost < runs[best].cost) best = i;
    }
    return best;
}

BestOfRuns query_kmeans(const Dataset& data, const PtasConfig& cfg, const OracleFactory& make_oracle,
                        std::uint64_t algo_seed, std::size_t threads) {
    cfg.validate();
    const PtasConfig eff = effective_config(cfg);
    BestOfRuns out;
    out.runs.resize(cfg.repeats);
    parallel_for(cfg.repeats, threads, [&](std::size_t r) {
        auto oracle = make_oracle(r);
        RunOutcome& run = out.runs[r];
        run.algo_seed = derive_seed(algo_seed, r);
        Rng rng(run.algo_seed);
        run.core = query_kmeans_core(data, eff, *oracle, rng);
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
