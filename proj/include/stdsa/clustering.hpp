#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stdsa/preprocess.hpp"
#include "stdsa/similarity.hpp"

namespace stdsa {

struct KMeansConfig {
    std::optional<std::size_t> k;       // empty = choose via elbow
    std::size_t max_iterations = 300;
    std::size_t restarts = 20;
    std::uint64_t seed = 42;
    double tolerance = 1e-6;            // centroid-shift stop threshold
};

struct ClusterResult {
    std::vector<std::size_t> assignments;           // point -> cluster in [0,k)
    std::vector<std::vector<double>> centroids;     // k centroids
    double sse = 0;
    std::vector<std::pair<std::size_t, double>> sse_curve;  // (k, sse), when swept
    std::size_t chosen_k = 0;
    std::size_t iterations_run = 0;
    std::vector<double> sse_trace;                  // per-iteration SSE of the best run
};

/// Lloyd's algorithm with greedy k-means++ seeding. Runs `restarts` seeded
/// initializations (sub-seed = seed + restart index) and keeps the lowest
/// SSE, ties resolved toward the earlier restart. Deterministic for a given
/// (points, config); results are independent of thread count because the
/// implementation is single-threaded with fixed reduction order.
ClusterResult kmeans(const std::vector<std::vector<double>>& points,
                     const KMeansConfig& config);

/// Best-of-restarts SSE for each k in 1..k_max. Each k additionally tries a
/// warm start built from the k-1 solution plus a split of its worst point, so
/// the curve is non-increasing in k.
std::vector<std::pair<std::size_t, double>> sse_curve(
    const std::vector<std::vector<double>>& points, std::size_t k_max,
    const KMeansConfig& config);

/// Elbow pick: the interior k where the SSE descent slows most sharply,
/// i.e. the largest ratio between the drop into k and the drop out of k.
/// Ties resolve to the smallest k.
std::size_t choose_k_elbow(const std::vector<std::pair<std::size_t, double>>& curve);

struct SecondFilterResult {
    ClusterResult clustering;
    std::set<std::string> recommended;
    std::vector<std::vector<double>> points;  // neighbor sims + target at (1,1)
};

/// Clusters the profile's (sim_alpha, sim_beta) points plus the target at
/// (1,1); k comes from the elbow unless config.k overrides. Recommends the
/// regions sharing the target's cluster.
SecondFilterResult second_filter(const SimilarityProfile& profile,
                                 const KMeansConfig& config);

struct BaselineResult {
    ClusterResult clustering;
    std::set<std::string> recommended;
};

/// Pure k-means reference: clusters every region on its full 9-indicator
/// normalized vector and recommends the target's cluster mates.
BaselineResult baseline_kmeans(const NormalizedDataset& normalized,
                               const std::string& target, std::size_t k,
                               const KMeansConfig& config);

std::string cluster_assignments_to_csv(const std::vector<std::string>& names,
                                       const ClusterResult& result);
std::string sse_curve_to_csv(const std::vector<std::pair<std::size_t, double>>& curve);

}  // namespace stdsa
