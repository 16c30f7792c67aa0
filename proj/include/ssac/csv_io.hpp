#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ssac/core.hpp"

namespace ssac {

/// Dataset file contents: header `x0,...,x{d-1}[,label]`, one row per point.
struct LabeledDataset {
    Dataset data;
    std::optional<Labeling> labels;
};

LabeledDataset read_dataset_csv(std::istream& in);
LabeledDataset read_dataset_csv(const std::string& path);

void write_dataset_csv(std::ostream& out, const Dataset& data, const Labeling* labels = nullptr);
void write_dataset_csv(const std::string& path, const Dataset& data, const Labeling* labels = nullptr);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

}  // namespace ssac
