#pragma once

#include <span>
#include <string>
#include <vector>

#include "stdsa/neighbor.hpp"
#include "stdsa/preprocess.hpp"

namespace stdsa {

/// Pearson correlation of two equal-length vectors, each centered by its own
/// mean. Throws LengthMismatch (sizes differ or < 2) or ZeroVariance
/// (constant vector).
double pearson(std::span<const double> a, std::span<const double> b);

/// Per-dimension similarity of two regions: Pearson over the dimension's
/// indicator values, each region centered by its own within-dimension mean.
/// Uses the indicators present in both records (the full dimension here).
double dimension_similarity(const NormalizedDataset& normalized,
                            const std::string& region_i,
                            const std::string& region_j, Dimension dim);

struct SimilarityEntry {
    std::string region;
    double sim_alpha = 0;
    double sim_beta = 0;
    bool degenerate = false;  // a ZeroVariance side was recorded as 0
};

struct SimilarityProfile {
    std::string target;
    std::vector<SimilarityEntry> entries;  // NeighborSet order
};

/// Scores every first-filter neighbor against the target on alpha and beta.
/// A ZeroVariance pair is flagged and scored 0 instead of aborting the run.
SimilarityProfile similarity_profile(const NormalizedDataset& normalized,
                                     const NeighborSet& neighbors);

/// CSV rows region,national_base,mass_base (alpha, beta).
std::string profile_to_csv(const SimilarityProfile& profile);

}  // namespace stdsa
