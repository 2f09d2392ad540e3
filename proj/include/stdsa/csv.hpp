#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "stdsa/schema.hpp"

namespace stdsa {

struct IngestReport {
    std::size_t rows_read = 0;
    std::size_t rows_accepted = 0;
    std::vector<std::pair<std::size_t, std::string>> rejects;  // (line, reason)
};

/// Reads the region dataset. Header must contain every schema column
/// (throws MissingColumn otherwise). Malformed rows and duplicate regions go
/// to the reject list; well-formed rows are kept in file order.
std::pair<Dataset, IngestReport> load_csv(const std::filesystem::path& path);

/// Writes the exact CSV format load_csv accepts. Numbers use the shortest
/// decimal that round-trips; fields are RFC-4180 quoted when needed.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

/// Canonical CSV bytes of a dataset (what save_dataset writes).
std::string dataset_to_csv(const Dataset& dataset);

/// Parses CSV bytes; same contract as load_csv.
std::pair<Dataset, IngestReport> parse_csv(const std::string& text);

// Low-level helpers shared with other writers.
std::string csv_quote(std::string_view field);
std::vector<std::string> split_csv_line(const std::string& line);
std::string format_double(double v);

}  // namespace stdsa
