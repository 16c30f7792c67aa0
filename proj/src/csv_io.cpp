#include "ssac/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ssac {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + s + "'");
    }
    return v;
}

}  // namespace

LabeledDataset read_dataset_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        header = split_fields(line);
        break;
    }
    if (header.empty()) throw ParseError("dataset file is empty (header row required)");

    const bool has_label = header.back() == "label";
    const std::size_t d = header.size() - (has_label ? 1 : 0);
    if (d == 0) throw ParseError("header declares no coordinate columns");
    for (std::size_t j = 0; j < d; ++j) {
        if (header[j] != "x" + std::to_string(j)) {
            throw ParseError("header column " + std::to_string(j) + " must be 'x" + std::to_string(j) +
                             "', got '" + header[j] + "'");
        }
    }

    std::vector<Point> points;
    std::vector<std::size_t> labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        Point p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = parse_double(fields[j], line_no);
        points.push_back(std::move(p));
        if (has_label) {
            long long v = -1;
            const auto& f = fields.back();
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size() || v < 0) {
                throw ParseError("line " + std::to_string(line_no) + ": bad label '" + f + "'");
            }
            labels.push_back(static_cast<std::size_t>(v));
        }
    }
    if (points.empty()) throw ParseError("dataset file has no data rows");

    LabeledDataset out{Dataset(std::move(points)), std::nullopt};
    if (has_label) {
        const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
        out.labels = Labeling(std::move(labels), k);
    }
    return out;
}

LabeledDataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_dataset_csv(in);
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_dataset_csv(std::ostream& out, const Dataset& data, const Labeling* labels) {
    for (std::size_t j = 0; j < data.dim(); ++j) out << (j ? "," : "") << 'x' << j;
    if (labels) out << ",label";
    out << '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.dim(); ++j) out << (j ? "," : "") << format_double(data[i][j]);
        if (labels) out << ',' << (*labels)[i];
        out << '\n';
    }
}

void write_dataset_csv(const std::string& path, const Dataset& data, const Labeling* labels) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    write_dataset_csv(out, data, labels);
}

}  // namespace ssac
