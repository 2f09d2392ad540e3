#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "stdsa/clustering.hpp"
#include "stdsa/metrics.hpp"
#include "stdsa/neighbor.hpp"
#include "stdsa/similarity.hpp"

namespace stdsa {

struct PipelineParams {
    std::size_t p = 8;
    std::optional<std::size_t> k;   // empty = elbow
    std::size_t baseline_k = 5;
    std::uint64_t seed = 42;
    std::size_t restarts = 20;
    MetricOptions metric_options{};
};

struct RecommendationReport {
    std::string target;
    NeighborSet neighbor_set;
    SimilarityProfile profile;
    std::set<std::string> stdsa_recommended;
    std::set<std::string> baseline_recommended;
    MetricsReport metrics;
    std::size_t p = 8;
    std::size_t chosen_k = 0;
    std::size_t baseline_k = 5;
    std::uint64_t seed = 42;
    std::size_t restarts = 20;
    std::vector<std::pair<std::size_t, double>> second_filter_curve;
    std::string dataset_sha256;
    std::string timestamp;  // ISO-8601 UTC

    // intermediates, kept for optional persistence
    NormalizedDataset normalized;
    SecondFilterResult second;
    BaselineResult baseline;
};

/// Full run: normalize -> first_filter -> similarity_profile -> second_filter
/// -> metrics -> baseline_kmeans. Deterministic for fixed inputs and seed;
/// stage names are attached to propagated errors.
RecommendationReport run_stdsa(const Dataset& dataset, const std::string& target,
                               const PipelineParams& params);

struct ComparisonSummary {
    std::size_t stdsa_size = 0;
    std::size_t baseline_size = 0;
    std::set<std::string> intersection;
    bool stdsa_subset_of_baseline = false;
};

ComparisonSummary compare(const RecommendationReport& report);

std::string report_to_json(const RecommendationReport& report);
std::string report_to_text(const RecommendationReport& report);

/// SHA-256 hex digest of a byte string (dataset provenance).
std::string sha256_hex(const std::string& bytes);

}  // namespace stdsa
