#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "stdsa/schema.hpp"

namespace stdsa {

struct NormalizedRecord {
    std::string region;
    std::array<double, kIndicatorCount> values{};  // each in [0, 1]
    bool operator==(const NormalizedRecord&) const = default;
};

/// Min-Max normalized dataset. Bounds are the global raw min/max actually
/// used, recorded per indicator so the scaling can be reproduced or cached.
struct NormalizedDataset {
    std::vector<NormalizedRecord> records;
    std::array<std::pair<double, double>, kIndicatorCount> bounds{};
    IndicatorSchema schema = IndicatorSchema::standard();
    std::vector<std::string> warnings;

    const NormalizedRecord* find(std::string_view region) const;
};

/// Scales every indicator to [0, 1] with global per-indicator bounds taken
/// over the whole dataset. A constant column maps to all zeros and produces
/// a warning instead of failing the run.
NormalizedDataset normalize(const Dataset& dataset);

struct BoxSummary {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    std::vector<std::pair<std::string, double>> outliers;  // (region, value)
};

struct IndicatorStats {
    std::array<BoxSummary, kIndicatorCount> per_indicator{};
    IndicatorSchema schema = IndicatorSchema::standard();
};

/// Tukey five-number summary per indicator (type-7 linear-interpolation
/// quartiles) with the 1.5*IQR outlier rule.
IndicatorStats box_stats(const Dataset& dataset);

struct CorrelationMatrix {
    std::array<std::array<double, kIndicatorCount>, kIndicatorCount> values{};
    IndicatorSchema schema = IndicatorSchema::standard();

    double at(std::string_view a, std::string_view b) const;
};

/// Pairwise Pearson correlation of the raw indicator columns.
/// Throws ConstantColumn when an indicator has zero variance.
CorrelationMatrix pcc_matrix(const Dataset& dataset);

// CSV exports for external plotting.
std::string correlation_to_csv(const CorrelationMatrix& m);
std::string box_stats_to_csv(const IndicatorStats& stats);

/// Normalized-dataset cache: dataset CSV layout plus a `<path>.bounds.csv`
/// sidecar holding key,min,max rows.
void save_normalized(const NormalizedDataset& nd, const std::filesystem::path& path);
NormalizedDataset load_normalized(const std::filesystem::path& path);

}  // namespace stdsa
