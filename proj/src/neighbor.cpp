#include "stdsa/neighbor.hpp"

#include <algorithm>
#include <cmath>

#include "stdsa/csv.hpp"
#include "stdsa/error.hpp"

namespace stdsa {

bool NeighborSet::contains(std::string_view region) const {
    for (const auto& [name, dist] : neighbors) {
        if (name == region) return true;
    }
    return false;
}

NeighborSet first_filter(const NormalizedDataset& normalized,
                         const std::string& target, std::size_t p) {
    const NormalizedRecord* t = normalized.find(target);
    if (!t) {
        throw Error(ErrorCode::UnknownRegion, "no region named '" + target + "'");
    }
    if (p + 1 > normalized.records.size()) {
        throw Error(ErrorCode::PTooLarge,
                    "p=" + std::to_string(p) + " but only " +
                        std::to_string(normalized.records.size()) + " regions");
    }
    const double tv = t->values[0];
    std::vector<std::pair<std::string, double>> all;
    all.reserve(normalized.records.size() - 1);
    for (const auto& r : normalized.records) {
        if (r.region == target) continue;
        all.emplace_back(r.region, std::abs(r.values[0] - tv));
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    all.resize(p);
    return NeighborSet{target, std::move(all)};
}

std::string neighbor_set_to_csv(const NeighborSet& ns) {
    std::string out = csv_quote(ns.target);
    for (const auto& [name, dist] : ns.neighbors) {
        out += "," + csv_quote(name);
    }
    out += "\n";
    return out;
}

}  // namespace stdsa
