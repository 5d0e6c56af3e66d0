#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cobweb/core.hpp"

namespace cobweb {

struct LoadOptions {
    char delimiter = ',';
    // Treat every column as nominal, using the verbatim cell strings as the
    // label set (observed distinct values in first-appearance order). This
    // is how the classical evaluator is applied to numeric data.
    bool force_all_nominal = false;
};

// Parse failure with 1-based row and column coordinates (column 0 refers to
// the whole row).
struct ParseError : std::runtime_error {
    std::size_t row;
    std::size_t column;
    ParseError(const std::string& msg, std::size_t r, std::size_t c = 0)
        : std::runtime_error(msg), row(r), column(c) {}
};

// Loads a delimited text table with a header row. Column types come from the
// sidecar schema when given; otherwise a column is numeric when every cell
// parses fully as a finite number, else nominal over its observed values.
// Every row is validated against the resulting schema; violations surface as
// ParseError with the offending row.
//
// Sidecar format, one line per column, same order as the header:
//   name,kind[,label1,label2,...]
// with kind "nominal" or "numeric"; labels are optional for nominal columns
// (observed values are used when omitted) and forbidden for numeric ones.
// Blank lines and lines starting with '#' are ignored.
Dataset load_csv_text(std::string_view text, std::optional<std::string_view> sidecar_text = {},
                      const LoadOptions& opt = {});
Dataset load_csv(const std::string& path, const std::optional<std::string>& sidecar_path = {},
                 const LoadOptions& opt = {});

// Loads an instance-to-cluster assignment: header "id,cluster", then one row
// per instance. Every instance id in [0, n_instances) must appear exactly
// once (UnassignedInstance / duplicate otherwise); ids outside that range
// are rejected (UnknownInstanceId). Clusters are ordered by first appearance
// of their label, member ids sorted ascending; `labels_out`, when non-null,
// receives the cluster labels in the same order.
Partition load_partition_text(std::string_view text, std::size_t n_instances,
                              std::vector<std::string>* labels_out = nullptr,
                              char delimiter = ',');
Partition load_partition(const std::string& path, std::size_t n_instances,
                         std::vector<std::string>* labels_out = nullptr, char delimiter = ',');

// Reads a whole file into a string; throws std::runtime_error when the file
// cannot be opened.
std::string read_file(const std::string& path);

}  // namespace cobweb
