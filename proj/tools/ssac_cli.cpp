// ssac: generate instances, run the clustering algorithms, solve small instances exactly,
// and aggregate result files.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssac/csv_io.hpp"
#include "ssac/datagen.hpp"
#include "ssac/exact.hpp"
#include "ssac/experiment.hpp"
#include "ssac/faulty.hpp"
#include "ssac/parallel.hpp"
#include "ssac/ptas.hpp"
#include "ssac/seeding.hpp"

using namespace ssac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

struct GenOptions {
    std::string kind = "gaussian-mixture";
    GenSpec spec;
    std::string output;
};

struct RunOptions {
    std::string algorithm;
    std::string input;
    std::size_t k = 0;
    double eps = 0.5;
    double q = 0.0;
    std::optional<double> scale;
    std::size_t repeats = 10;
    std::uint64_t algo_seed = 0;
    std::uint64_t oracle_seed = 0;
    std::uint64_t data_seed = 0;
    std::string format = "csv";
    std::size_t parallel = 1;
    bool lloyd = false;
    bool general_mode = false;
    bool timing = false;
    std::optional<std::size_t> sample_n, sample_m, sample_l, min_cluster_size;
};

struct ExactOptions {
    std::string input;
    std::size_t k = 0;
};

struct ReportOptions {
    std::vector<std::string> inputs;
};

const std::vector<std::string> kAlgorithms = {"kmeans++", "query-kmeans++", "query-kmeans", "faulty-query-kmeans"};

bool uses_oracle(const std::string& algo) { return algo != "kmeans++"; }

double resolve_scale(const std::optional<double>& flag) {
    double scale = 1.0;
    if (flag) {
        scale = *flag;
    } else if (const char* env = std::getenv("SSAC_DEFAULT_SCALE"); env && *env) {
        std::istringstream is(env);
        if (!(is >> scale) || !is.eof()) throw ContractViolation("SSAC_DEFAULT_SCALE is not a number");
    }
    if (!(scale > 0.0 && scale <= 1.0)) throw ContractViolation("scale must be in (0, 1]");
    return scale;
}

int cmd_gen(const GenOptions& o) {
    GenSpec spec = o.spec;
    const auto kind = parse_gen_kind(o.kind);
    if (!kind) throw ContractViolation("unknown kind '" + o.kind + "'");
    spec.kind = *kind;
    const auto inst = generate(spec);
    if (o.output.empty() || o.output == "-") {
        write_dataset_csv(std::cout, inst.data, &inst.labels);
    } else {
        write_dataset_csv(o.output, inst.data, &inst.labels);
    }
    return kExitOk;
}

// What one repeat of any algorithm reports.
struct RepeatOutcome {
    CenterSet centers;
    double cost = 0.0;
    std::uint64_t queries = 0;
    std::uint64_t distinct_pairs = 0;
    std::size_t failed_rounds = 0;
    std::size_t padded = 0;
    double millis = 0.0;
};

std::vector<RepeatOutcome> run_seeding(const Dataset& data, const std::optional<Labeling>& labels,
                                       const RunOptions& o) {
    std::vector<RepeatOutcome> out(o.repeats);
    parallel_for(o.repeats, o.parallel, [&](std::size_t r) {
        const auto start = std::chrono::steady_clock::now();
        Rng rng(derive_seed(o.algo_seed, r));
        SeedingResult s;
        std::optional<OracleStats> stats;
        if (o.algorithm == "kmeans++") {
            s = kmeans_pp(data, o.k, rng);
        } else {
            PerfectOracle oracle{GroundTruth(*labels)};
            s = query_kmeans_pp(data, o.k, oracle, rng);
            stats = oracle.stats();
        }
        auto padded = pad_centers(data, s.centers, o.k, rng);
        RepeatOutcome& res = out[r];
        res.cost = cost(padded.centers, data);
        res.centers = std::move(padded.centers);
        res.padded = padded.padded;
        res.failed_rounds = s.rounds_exhausted;
        res.queries = s.queries_used;
        res.distinct_pairs = stats ? stats->distinct_pair_count : 0;
        if (o.timing) {
            res.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    });
    return out;
}

std::vector<RepeatOutcome> run_ptas(const Dataset& data, const Labeling& labels, const RunOptions& o) {
    FaultyConfig cfg;
    cfg.k = o.k;
    cfg.eps = o.eps;
    cfg.q = o.q;
    cfg.scale = resolve_scale(o.scale);
    cfg.repeats = o.repeats;
    cfg.general_mode = o.general_mode;
    cfg.min_cluster_size = o.min_cluster_size;
    const bool faulty = o.algorithm == "faulty-query-kmeans";
    if (o.sample_n || o.sample_m || o.sample_l) {
        SampleSizes base = faulty ? effective_config(cfg).faulty_sizes() : effective_config(cfg).sample_sizes();
        if (o.sample_n) base.N = *o.sample_n;
        if (o.sample_m) base.M = *o.sample_m;
        if (o.sample_l) base.L = *o.sample_l;
        cfg.sizes = base;
    }
    const GroundTruth truth(labels);
    const auto start = std::chrono::steady_clock::now();
    BestOfRuns best;
    if (faulty) {
        const OracleFactory make = [&](std::size_t r) {
            return std::make_unique<FaultyOracle>(truth, o.q, derive_seed(o.oracle_seed, r));
        };
        best = faulty_query_kmeans(data, cfg, make, o.algo_seed, o.parallel);
    } else {
        if (o.q != 0.0) throw ContractViolation("--q only applies to faulty-query-kmeans");
        const OracleFactory make = [&](std::size_t) { return std::make_unique<PerfectOracle>(truth); };
        best = query_kmeans(data, cfg, make, o.algo_seed, o.parallel);
    }
    const double per_run =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count() /
        static_cast<double>(o.repeats);
    std::vector<RepeatOutcome> out;
    for (auto& run : best.runs) {
        RepeatOutcome res;
        res.centers = run.reported_centers;
        res.cost = run.cost;
        res.queries = run.core.queries;
        res.distinct_pairs = run.oracle_stats.distinct_pair_count;
        res.failed_rounds = run.core.failed_rounds;
        res.padded = run.padded;
        res.millis = o.timing ? per_run : 0.0;
        out.push_back(std::move(res));
    }
    return out;
}

int cmd_run(RunOptions o) {
    if (o.repeats < 1) throw ContractViolation("--repeats must be at least 1");
    if (o.parallel < 1) throw ContractViolation("--parallel must be at least 1");
    if (!(o.q >= 0.0 && o.q < 0.5)) throw ContractViolation("q must be < 1/2 (and >= 0)");
    const auto file = read_dataset_csv(o.input);
    const Dataset& data = file.data;
    if (o.k < 1 || o.k > data.size()) throw ContractViolation("--k must be in [1, n]");
    if (uses_oracle(o.algorithm) && !file.labels) {
        throw ContractViolation(o.algorithm + " needs ground truth: the input has no 'label' column");
    }

    std::vector<RepeatOutcome> outcomes;
    if (o.algorithm == "kmeans++" || o.algorithm == "query-kmeans++") {
        if (o.q != 0.0) throw ContractViolation("--q only applies to faulty-query-kmeans");
        outcomes = run_seeding(data, file.labels, o);
    } else {
        outcomes = run_ptas(data, *file.labels, o);
    }

    std::optional<double> delta_k;
    if (data.size() <= kMaxExactPoints) delta_k = solve_exact(data, o.k).optimal_cost;
    const double scale = resolve_scale(o.scale);

    auto make_row = [&](const RepeatOutcome& r, const std::string& repeat) {
        ExperimentResult row;
        row.algorithm = o.algorithm;
        row.instance = o.input;
        row.data_seed = o.data_seed;
        row.algo_seed = o.algo_seed;
        row.oracle_seed = o.oracle_seed;
        row.repeat = repeat;
        row.k = o.k;
        row.eps = o.eps;
        row.q = o.q;
        row.scale = scale;
        row.repeats = o.repeats;
        row.achieved_cost = r.cost;
        row.delta_k = delta_k;
        if (delta_k) {
            if (*delta_k > 0.0) {
                row.ratio = r.cost / *delta_k;
            } else if (r.cost == 0.0) {
                row.ratio = 1.0;
            }
        }
        row.query_count = r.queries;
        row.distinct_pair_count = r.distinct_pairs;
        row.failed_rounds = r.failed_rounds;
        row.padded_centers = r.padded;
        if (o.lloyd) row.lloyd_cost = cost(lloyd_refine(data, r.centers), data);
        row.wall_millis = r.millis;
        return row;
    };

    std::size_t best = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r) {
        if (outcomes[r].cost < outcomes[best].cost) best = r;
    }
    std::vector<ExperimentResult> rows;
    for (std::size_t r = 0; r < outcomes.size(); ++r) rows.push_back(make_row(outcomes[r], std::to_string(r)));
    rows.push_back(make_row(outcomes[best], "best"));

    if (o.format == "json") {
        for (const auto& row : rows) std::cout << to_json_line(row) << '\n';
    } else {
        std::cout << result_csv_header() << '\n';
        for (const auto& row : rows) std::cout << to_csv_row(row) << '\n';
    }
    return kExitOk;
}

int cmd_exact(const ExactOptions& o) {
    const auto file = read_dataset_csv(o.input);
    const auto sol = solve_exact(file.data, o.k);
    nlohmann::json j;
    j["n"] = file.data.size();
    j["k"] = o.k;
    j["optimal_cost"] = sol.optimal_cost;
    j["labeling"] = sol.labeling.labels;
    j["centers"] = sol.centers;
    std::cout << j.dump() << '\n';
    return kExitOk;
}

int cmd_report(const ReportOptions& o) {
    std::vector<ExperimentResult> rows;
    auto absorb = [&](std::istream& in, const std::string& name) {
        auto part = read_results(in, name);
        rows.insert(rows.end(), part.begin(), part.end());
    };
    if (o.inputs.empty()) {
        absorb(std::cin, "<stdin>");
    }
    for (const auto& path : o.inputs) {
        if (path == "-") {
            absorb(std::cin, "<stdin>");
            continue;
        }
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open " + path);
        absorb(in, path);
    }
    std::cout << report_csv_header() << '\n';
    for (const auto& r : aggregate(rows)) std::cout << to_csv_row(r) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clustering with same-cluster queries: generators, algorithms and reports"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate a labeled synthetic instance as CSV");
    g->add_option("--kind", gen.kind, "gaussian-mixture | margin-balls | grid | line")->capture_default_str();
    g->add_option("--k", gen.spec.k, "Number of clusters")->capture_default_str();
    g->add_option("--d", gen.spec.d, "Dimension")->capture_default_str();
    g->add_option("--n-per-cluster", gen.spec.n_per_cluster, "Points per cluster")->capture_default_str();
    g->add_option("--separation", gen.spec.separation, "Distance between cluster centers")->capture_default_str();
    g->add_option("--sigma,--radius", gen.spec.spread, "Gaussian sigma, or ball radius for margin-balls")
        ->capture_default_str();
    g->add_option("--gamma", gen.spec.gamma, "Margin factor (margin-balls)")->capture_default_str();
    g->add_option("--seed", gen.spec.seed, "Random seed")->capture_default_str();
    g->add_option("-o,--output", gen.output, "Output file (default: stdout)");

    RunOptions run;
    auto* r = app.add_subcommand("run", "Run an algorithm and print one result row per repeat plus a best row");
    r->add_option("algorithm", run.algorithm, "kmeans++ | query-kmeans++ | query-kmeans | faulty-query-kmeans")
        ->required()
        ->check(CLI::IsMember(kAlgorithms));
    r->add_option("-i,--input", run.input, "Dataset CSV")->required();
    r->add_option("--k", run.k, "Number of centers")->required();
    r->add_option("--eps", run.eps, "Accuracy parameter in (0, 1/2]")->capture_default_str();
    r->add_option("--q", run.q, "Oracle error rate for faulty-query-kmeans")->capture_default_str();
    r->add_option("--scale", run.scale, "Sample-size multiplier in (0, 1] (default: $SSAC_DEFAULT_SCALE or 1)");
    r->add_option("--repeats", run.repeats, "Independent repeats")->capture_default_str();
    r->add_option("--algo-seed", run.algo_seed)->capture_default_str();
    r->add_option("--oracle-seed", run.oracle_seed)->capture_default_str();
    r->add_option("--data-seed", run.data_seed, "Recorded in the output only")->capture_default_str();
    r->add_option("--format", run.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    r->add_option("--parallel", run.parallel, "Worker threads for repeats")->capture_default_str();
    r->add_flag("--lloyd-refine", run.lloyd, "Also report the cost after Lloyd refinement");
    r->add_flag("--general-mode", run.general_mode, "Shrink eps so no irreducibility is assumed");
    r->add_flag("--timing", run.timing, "Record wall-clock time (makes output non-reproducible)");
    r->add_option("--sample-n", run.sample_n, "Override N");
    r->add_option("--sample-m", run.sample_m, "Override M");
    r->add_option("--sample-l", run.sample_l, "Override L");
    r->add_option("--min-cluster-size", run.min_cluster_size, "Faulty partition threshold override");

    ExactOptions ex;
    auto* e = app.add_subcommand("exact", "Solve k-means exactly (n <= 14) and print JSON");
    e->add_option("-i,--input", ex.input, "Dataset CSV")->required();
    e->add_option("--k", ex.k, "Number of centers")->required();

    ReportOptions rep;
    auto* p = app.add_subcommand("report", "Aggregate result files (CSV or JSON lines) into a summary CSV");
    p->add_option("inputs", rep.inputs, "Result files ('-' or none for stdin)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*r) return cmd_run(run);
        if (*e) return cmd_exact(ex);
        if (*p) return cmd_report(rep);
    } catch (const DegenerateDistributionError& err) {
        std::cerr << "error: degenerate instance: " << err.what() << '\n';
        return kExitDegenerate;
    } catch (const NoCentersError& err) {
        std::cerr << "error: degenerate instance: " << err.what() << '\n';
        return kExitDegenerate;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
