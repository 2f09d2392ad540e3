#include "stdsa/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "stdsa/csv.hpp"
#include "stdsa/error.hpp"

namespace stdsa {

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw Error(ErrorCode::LengthMismatch,
                    "pearson needs two equal-length vectors of size >= 2");
    }
    const auto n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va <= 0.0 || vb <= 0.0) {
        throw Error(ErrorCode::ZeroVariance, "constant vector in pearson");
    }
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

double dimension_similarity(const NormalizedDataset& normalized,
                            const std::string& region_i,
                            const std::string& region_j, Dimension dim) {
    const NormalizedRecord* ri = normalized.find(region_i);
    const NormalizedRecord* rj = normalized.find(region_j);
    if (!ri) throw Error(ErrorCode::UnknownRegion, "no region '" + region_i + "'");
    if (!rj) throw Error(ErrorCode::UnknownRegion, "no region '" + region_j + "'");
    const auto idx = normalized.schema.dimension_indices(dim);
    if (idx.size() < 2) {
        throw Error(ErrorCode::LengthMismatch,
                    std::string("dimension ") + to_string(dim) +
                        " has fewer than 2 indicators");
    }
    std::vector<double> vi, vj;
    vi.reserve(idx.size());
    vj.reserve(idx.size());
    for (std::size_t i : idx) {
        vi.push_back(ri->values[i]);
        vj.push_back(rj->values[i]);
    }
    return pearson(vi, vj);
}

SimilarityProfile similarity_profile(const NormalizedDataset& normalized,
                                     const NeighborSet& neighbors) {
    SimilarityProfile profile;
    profile.target = neighbors.target;
    profile.entries.reserve(neighbors.neighbors.size());
    for (const auto& [region, dist] : neighbors.neighbors) {
        SimilarityEntry e;
        e.region = region;
        for (auto [dim, out] : {std::pair{Dimension::Alpha, &e.sim_alpha},
                                std::pair{Dimension::Beta, &e.sim_beta}}) {
            try {
                *out = dimension_similarity(normalized, neighbors.target, region, dim);
            } catch (const Error& err) {
                if (err.code() != ErrorCode::ZeroVariance) throw;
                *out = 0.0;
                e.degenerate = true;
            }
        }
        profile.entries.push_back(std::move(e));
    }
    return profile;
}

std::string profile_to_csv(const SimilarityProfile& profile) {
    std::string out = "region,national_base,mass_base\n";
    for (const auto& e : profile.entries) {
        out += csv_quote(e.region) + "," + format_double(e.sim_alpha) + "," +
               format_double(e.sim_beta) + "\n";
    }
    return out;
}

}  // namespace stdsa
