#include "ssac/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "ssac/csv_io.hpp"

namespace ssac {
namespace {

using json = nlohmann::json;

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

template <class T>
T parse_number(const std::string& s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("bad number '" + s + "'");
    return v;
}

std::optional<double> parse_optional(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_number<double>(s);
}

ExperimentResult from_fields(const std::vector<std::string>& f) {
    const auto& cols = result_columns();
    if (f.size() != cols.size()) {
        throw ParseError("expected " + std::to_string(cols.size()) + " fields, got " + std::to_string(f.size()));
    }
    ExperimentResult r;
    r.algorithm = f[0];
    r.instance = f[1];
    r.data_seed = parse_number<std::uint64_t>(f[2]);
    r.algo_seed = parse_number<std::uint64_t>(f[3]);
    r.oracle_seed = parse_number<std::uint64_t>(f[4]);
    r.repeat = f[5];
    r.k = parse_number<std::size_t>(f[6]);
    r.eps = parse_number<double>(f[7]);
    r.q = parse_number<double>(f[8]);
    r.scale = parse_number<double>(f[9]);
    r.repeats = parse_number<std::size_t>(f[10]);
    r.achieved_cost = parse_number<double>(f[11]);
    r.delta_k = parse_optional(f[12]);
    r.ratio = parse_optional(f[13]);
    r.query_count = parse_number<std::uint64_t>(f[14]);
    r.distinct_pair_count = parse_number<std::uint64_t>(f[15]);
    r.failed_rounds = parse_number<std::size_t>(f[16]);
    r.padded_centers = parse_number<std::size_t>(f[17]);
    r.lloyd_cost = parse_optional(f[18]);
    r.wall_millis = parse_number<double>(f[19]);
    if (r.algorithm.empty()) throw ParseError("empty algorithm field");
    return r;
}

ExperimentResult from_json(const json& j) {
    ExperimentResult r;
    auto opt_num = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return j.at(key).get<double>();
    };
    r.algorithm = j.at("algorithm").get<std::string>();
    r.instance = j.at("instance").get<std::string>();
    r.data_seed = j.at("data_seed").get<std::uint64_t>();
    r.algo_seed = j.at("algo_seed").get<std::uint64_t>();
    r.oracle_seed = j.at("oracle_seed").get<std::uint64_t>();
    r.repeat = j.at("repeat").get<std::string>();
    r.k = j.at("k").get<std::size_t>();
    r.eps = j.at("eps").get<double>();
    r.q = j.at("q").get<double>();
    r.scale = j.at("scale").get<double>();
    r.repeats = j.at("repeats").get<std::size_t>();
    r.achieved_cost = j.at("achieved_cost").get<double>();
    r.delta_k = opt_num("delta_k");
    r.ratio = opt_num("ratio");
    r.query_count = j.at("query_count").get<std::uint64_t>();
    r.distinct_pair_count = j.at("distinct_pair_count").get<std::uint64_t>();
    r.failed_rounds = j.at("failed_rounds").get<std::size_t>();
    r.padded_centers = j.at("padded_centers").get<std::size_t>();
    r.lloyd_cost = opt_num("lloyd_cost");
    r.wall_millis = j.at("wall_millis").get<double>();
    return r;
}

}  // namespace

const std::vector<std::string>& result_columns() {
    static const std::vector<std::string> cols = {
        "algorithm",   "instance",   "data_seed",     "algo_seed",   "oracle_seed",
        "repeat",      "k",          "eps",           "q",           "scale",
        "repeats",     "achieved_cost", "delta_k",    "ratio",       "query_count",
        "distinct_pair_count", "failed_rounds", "padded_centers", "lloyd_cost", "wall_millis"};
    return cols;
}

std::string result_csv_header() {
    std::string out;
    for (const auto& c : result_columns()) out += (out.empty() ? "" : ",") + c;
    return out;
}

std::string to_csv_row(const ExperimentResult& r) {
    std::ostringstream o;
    o << r.algorithm << ',' << r.instance << ',' << r.data_seed << ',' << r.algo_seed << ',' << r.oracle_seed
      << ',' << r.repeat << ',' << r.k << ',' << format_double(r.eps) << ',' << format_double(r.q) << ','
      << format_double(r.scale) << ',' << r.repeats << ',' << format_double(r.achieved_cost) << ','
      << opt(r.delta_k) << ',' << opt(r.ratio) << ',' << r.query_count << ',' << r.distinct_pair_count << ','
      << r.failed_rounds << ',' << r.padded_centers << ',' << opt(r.lloyd_cost) << ','
      << format_double(r.wall_millis);
    return o.str();
}

std::string to_json_line(const ExperimentResult& r) {
    json j = json::object();
    auto put_opt = [&](const char* key, const std::optional<double>& v) {
        j[key] = v ? json(*v) : json(nullptr);
    };
    j["algorithm"] = r.algorithm;
    j["instance"] = r.instance;
    j["data_seed"] = r.data_seed;
    j["algo_seed"] = r.algo_seed;
    j["oracle_seed"] = r.oracle_seed;
    j["repeat"] = r.repeat;
    j["k"] = r.k;
    j["eps"] = r.eps;
    j["q"] = r.q;
    j["scale"] = r.scale;
    j["repeats"] = r.repeats;
    j["achieved_cost"] = r.achieved_cost;
    put_opt("delta_k", r.delta_k);
    put_opt("ratio", r.ratio);
    j["query_count"] = r.query_count;
    j["distinct_pair_count"] = r.distinct_pair_count;
    j["failed_rounds"] = r.failed_rounds;
    j["padded_centers"] = r.padded_centers;
    put_opt("lloyd_cost", r.lloyd_cost);
    j["wall_millis"] = r.wall_millis;
    // Keep the documented column order rather than json's alphabetical one.
    std::string out = "{";
    bool first = true;
    for (const auto& c : result_columns()) {
        out += (first ? "" : ",") + json(c).dump() + ":" + j.at(c).dump();
        first = false;
    }
    return out + "}";
}

std::vector<ExperimentResult> read_results(std::istream& in, const std::string& source) {
    std::vector<ExperimentResult> rows;
    std::vector<std::string> problems;
    const std::string header = result_csv_header();
    bool saw_header = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            if (line.front() == '{') {
                rows.push_back(from_json(json::parse(line)));
            } else if (line == header) {
                saw_header = true;
            } else if (!saw_header) {
                throw ParseError("CSV row before header");
            } else {
                rows.push_back(from_fields(split(line)));
            }
        } catch (const std::exception& e) {
            problems.push_back(source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!problems.empty()) {
        std::string msg = "malformed result rows:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw ParseError(msg);
    }
    return rows;
}

std::vector<ReportRow> aggregate(const std::vector<ExperimentResult>& rows) {
    using Key = std::tuple<std::string, std::string, std::size_t, double, double, double>;
    struct Acc {
        std::size_t rows = 0;
        std::size_t with_ratio = 0;
        std::size_t successes = 0;
        double ratio_sum = 0.0;
        double ratio_max = 0.0;
        double query_sum = 0.0;
    };
    std::map<Key, Acc> groups;
    for (const auto& r : rows) {
        const std::string kind = r.repeat == "best" ? "best" : "run";
        auto& acc = groups[Key{r.algorithm, kind, r.k, r.eps, r.q, r.scale}];
        ++acc.rows;
        acc.query_sum += static_cast<double>(r.query_count);
        if (r.ratio) {
            ++acc.with_ratio;
            acc.ratio_sum += *r.ratio;
            acc.ratio_max = acc.with_ratio == 1 ? *r.ratio : std::max(acc.ratio_max, *r.ratio);
            if (*r.ratio <= 1.0 + r.eps) ++acc.successes;
        }
    }
    std::vector<ReportRow> out;
    for (const auto& [key, acc] : groups) {
        ReportRow row;
        std::tie(row.algorithm, row.row_kind, row.k, row.eps, row.q, row.scale) = key;
        row.rows = acc.rows;
        row.rows_with_ratio = acc.with_ratio;
        row.mean_queries = acc.query_sum / static_cast<double>(acc.rows);
        if (acc.with_ratio > 0) {
            row.mean_ratio = acc.ratio_sum / static_cast<double>(acc.with_ratio);
            row.max_ratio = acc.ratio_max;
            row.success_fraction = static_cast<double>(acc.successes) / static_cast<double>(acc.with_ratio);
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string report_csv_header() {
    return "algorithm,row_kind,k,eps,q,scale,rows,rows_with_ratio,mean_ratio,max_ratio,mean_queries,"
           "success_fraction";
}

std::string to_csv_row(const ReportRow& r) {
    std::ostringstream o;
    o << r.algorithm << ',' << r.row_kind << ',' << r.k << ',' << format_double(r.eps) << ','
      << format_double(r.q) << ',' << format_double(r.scale) << ',' << r.rows << ',' << r.rows_with_ratio << ','
      << opt(r.mean_ratio) << ',' << opt(r.max_ratio) << ',' << format_double(r.mean_queries) << ','
      << opt(r.success_fraction);
    return o.str();
}

CenterSet lloyd_refine(const Dataset& data, CenterSet centers, std::size_t max_iterations) {
    if (centers.empty()) throw NoCentersError();
    std::vector<std::size_t> owner(data.size(), centers.size());
    for (std::size_t it = 0; it < max_iterations; ++it) {
        bool changed = false;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const std::size_t c = nearest_center(centers, data[i]);
            if (c != owner[i]) {
                owner[i] = c;
                changed = true;
            }
        }
        if (!changed) break;
        std::vector<Point> sums(centers.size(), Point(data.dim(), 0.0));
        std::vector<std::size_t> counts(centers.size(), 0);
        for (std::size_t i = 0; i < data.size(); ++i) {
            ++counts[owner[i]];
            for (std::size_t j = 0; j < data.dim(); ++j) sums[owner[i]][j] += data[i][j];
        }
        for (std::size_t c = 0; c < centers.size(); ++c) {
            if (counts[c] == 0) continue;
            for (std::size_t j = 0; j < data.dim(); ++j) centers[c][j] = sums[c][j] / static_cast<double>(counts[c]);
        }
    }
    return centers;
}

}  // namespace ssac
