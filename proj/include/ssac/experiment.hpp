#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssac/core.hpp"

namespace ssac {

/// One row of a `run` report: a single repeat, or the `best` summary over repeats.
struct ExperimentResult {
    std::string algorithm;
    std::string instance;
    std::uint64_t data_seed = 0;
    std::uint64_t algo_seed = 0;
    std::uint64_t oracle_seed = 0;
    std::string repeat;  ///< repeat index, or "best"
    std::size_t k = 0;
    double eps = 0.0;
    double q = 0.0;
    double scale = 1.0;
    std::size_t repeats = 1;
    double achieved_cost = 0.0;
    std::optional<double> delta_k;
    std::optional<double> ratio;
    std::uint64_t query_count = 0;
    std::uint64_t distinct_pair_count = 0;
    std::size_t failed_rounds = 0;
    std::size_t padded_centers = 0;
    std::optional<double> lloyd_cost;
    double wall_millis = 0.0;
};

/// Fixed column order of the CSV form.
const std::vector<std::string>& result_columns();
std::string result_csv_header();
std::string to_csv_row(const ExperimentResult& r);
/// Flat JSON object on one line; absent optionals are null.
std::string to_json_line(const ExperimentResult& r);

/// Parses CSV (header required, repeated headers skipped) or JSON-lines result files.
/// Throws ParseError naming every malformed line.
std::vector<ExperimentResult> read_results(std::istream& in, const std::string& source = "<input>");

struct ReportRow {
    std::string algorithm;
    std::string row_kind;  ///< "run" or "best"
    std::size_t k = 0;
    double eps = 0.0;
    double q = 0.0;
    double scale = 1.0;
    std::size_t rows = 0;
    std::size_t rows_with_ratio = 0;
    std::optional<double> mean_ratio;
    std::optional<double> max_ratio;
    double mean_queries = 0.0;
    /// Fraction of rows with ratio <= 1 + eps.
    std::optional<double> success_fraction;
};

/// Groups by (algorithm, row kind, k, eps, q, scale) in a deterministic order.
std::vector<ReportRow> aggregate(const std::vector<ExperimentResult>& rows);
std::string report_csv_header();
std::string to_csv_row(const ReportRow& r);

/// Standard alternating (Lloyd) refinement. Empty clusters keep their previous center.
CenterSet lloyd_refine(const Dataset& data, CenterSet centers, std::size_t max_iterations = 100);

}  // namespace ssac
