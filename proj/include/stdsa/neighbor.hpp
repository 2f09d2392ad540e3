#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stdsa/preprocess.hpp"

namespace stdsa {

/// First-filter result: the p regions nearest to the target on the
/// normalized infection value, closest first.
struct NeighborSet {
    std::string target;
    std::vector<std::pair<std::string, double>> neighbors;  // (region, distance)

    bool contains(std::string_view region) const;
};

/// Exact nearest-neighbor screening on the gamma dimension. The distance is
/// |infection_target - infection_other|; ties break on ascending region name.
NeighborSet first_filter(const NormalizedDataset& normalized,
                         const std::string& target, std::size_t p);

/// One CSV row: target,neighbor1..neighborP
std::string neighbor_set_to_csv(const NeighborSet& ns);

}  // namespace stdsa
