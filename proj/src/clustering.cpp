#include "stdsa/clustering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "stdsa/csv.hpp"
#include "stdsa/error.hpp"

namespace stdsa {

namespace {

// Portable uniform [0,1): fixed 53-bit mapping so results do not depend on
// the standard library's distribution implementation.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t next_index(std::mt19937_64& rng, std::size_t n) {
    auto idx = static_cast<std::size_t>(next_uniform(rng) * static_cast<double>(n));
    return idx < n ? idx : n - 1;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

using Points = std::vector<std::vector<double>>;

// k-means++ seeding. Greedy mode D^2-samples a few candidates per step and
// keeps the one minimizing the potential; plain mode takes a single draw.
// Restarts alternate between the two: greedy converges reliably on clustered
// data while plain draws keep the restarts exploring distinct basins.
Points kmeanspp_init(const Points& pts, std::size_t k, std::mt19937_64& rng,
                     bool greedy) {
    const std::size_t n = pts.size();
    const std::size_t candidates =
        greedy ? 2 + static_cast<std::size_t>(std::bit_width(k) - 1) : 1;
    Points centers;
    centers.reserve(k);
    centers.push_back(pts[next_index(rng, n)]);
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(pts[i], centers[0]);

    std::vector<double> cand_d2(n);
    std::vector<double> best_d2(n);
    while (centers.size() < k) {
        double total = 0;
        for (double v : d2) total += v;
        double best_pot = std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        for (std::size_t c = 0; c < candidates; ++c) {
            std::size_t idx;
            if (total <= 0) {
                idx = next_index(rng, n);
            } else {
                const double r = next_uniform(rng) * total;
                double acc = 0;
                idx = n - 1;
                for (std::size_t i = 0; i < n; ++i) {
                    acc += d2[i];
                    if (acc >= r) {
                        idx = i;
                        break;
                    }
                }
            }
            double pot = 0;
            for (std::size_t i = 0; i < n; ++i) {
                cand_d2[i] = std::min(d2[i], sq_dist(pts[i], pts[idx]));
                pot += cand_d2[i];
            }
            if (pot < best_pot) {
                best_pot = pot;
                best_idx = idx;
                best_d2 = cand_d2;
            }
        }
        centers.push_back(pts[best_idx]);
        d2 = best_d2;
    }
    return centers;
}

struct LloydOutcome {
    double sse = 0;
    std::vector<std::size_t> assign;
    Points centroids;
    std::size_t iterations = 0;
    std::vector<double> trace;
};

LloydOutcome lloyd(const Points& pts, Points centers, std::size_t max_iter,
                   double tol) {
    const std::size_t n = pts.size();
    const std::size_t k = centers.size();
    const std::size_t dim = pts[0].size();
    std::vector<std::size_t> assign(n, k);  // k = unassigned marker
    std::vector<double> best_d(n, 0);
    LloydOutcome out;

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best_c = 0;
            double bd = sq_dist(pts[i], centers[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = sq_dist(pts[i], centers[c]);
                if (d < bd) {
                    bd = d;
                    best_c = c;
                }
            }
            if (best_c != assign[i]) changed = true;
            assign[i] = best_c;
            best_d[i] = bd;
        }
        // empty-cluster repair: hand the point farthest from its centroid over
        std::vector<std::size_t> count(k, 0);
        for (std::size_t i = 0; i < n; ++i) ++count[assign[i]];
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] != 0) continue;
            std::size_t far = 0;
            double fd = -1;
            for (std::size_t i = 0; i < n; ++i) {
                if (count[assign[i]] > 1 && best_d[i] > fd) {
                    fd = best_d[i];
                    far = i;
                }
            }
            --count[assign[far]];
            assign[far] = c;
            count[c] = 1;
            best_d[far] = 0;
            changed = true;
        }
        // centroid update (fixed summation order)
        Points next(k, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d) next[assign[i]][d] += pts[i][d];
        }
        double max_shift = 0;
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t d = 0; d < dim; ++d) {
                next[c][d] /= static_cast<double>(count[c]);
            }
            max_shift = std::max(max_shift, std::sqrt(sq_dist(next[c], centers[c])));
        }
        centers = std::move(next);
        double sse = 0;
        for (std::size_t i = 0; i < n; ++i) sse += sq_dist(pts[i], centers[assign[i]]);
        out.trace.push_back(sse);
        out.iterations = iter + 1;
        if (!changed || max_shift < tol) break;
    }
    out.assign = std::move(assign);
    out.centroids = std::move(centers);
    out.sse = out.trace.empty() ? 0 : out.trace.back();
    return out;
}

void check_points(const Points& pts, std::size_t k) {
    if (pts.empty()) throw Error(ErrorCode::EmptyInput, "no points to cluster");
    const std::size_t dim = pts[0].size();
    for (const auto& p : pts) {
        if (p.size() != dim) {
            throw Error(ErrorCode::DimensionMismatch,
                        "points of differing dimension");
        }
    }
    if (k == 0 || k > pts.size()) {
        throw Error(ErrorCode::KTooLarge,
                    "k=" + std::to_string(k) + " for " +
                        std::to_string(pts.size()) + " points");
    }
}

// number of k-subsets, saturating well above the exhaustive-seeding budget
std::size_t choose_capped(std::size_t n, std::size_t k, std::size_t cap) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < k; ++i) {
        c = c * (n - i) / (i + 1);
        if (c > cap) return cap + 1;
    }
    return c;
}

LloydOutcome best_of_restarts(const Points& pts, std::size_t k,
                              const KMeansConfig& cfg) {
    LloydOutcome best;
    bool have = false;
    auto consider = [&](LloydOutcome run) {
        if (!have || run.sse < best.sse) {
            best = std::move(run);
            have = true;
        }
    };
    for (std::size_t r = 0; r < std::max<std::size_t>(cfg.restarts, 1); ++r) {
        std::mt19937_64 rng(cfg.seed + r);
        auto centers = kmeanspp_init(pts, k, rng, r % 2 == 0);
        consider(lloyd(pts, std::move(centers), cfg.max_iterations, cfg.tolerance));
    }
    // Tiny inputs: additionally seed from every k-subset of the points. This
    // is deterministic, costs nothing at scale (skipped once the subset count
    // exceeds the budget) and pins the toy-scale global optimum.
    constexpr std::size_t kSubsetBudget = 256;
    if (choose_capped(pts.size(), k, kSubsetBudget) <= kSubsetBudget) {
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            Points centers;
            centers.reserve(k);
            for (std::size_t i : pick) centers.push_back(pts[i]);
            consider(lloyd(pts, std::move(centers), cfg.max_iterations,
                           cfg.tolerance));
            // next combination
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == pts.size() - k + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return best;
}

ClusterResult to_result(LloydOutcome&& o, std::size_t k) {
    ClusterResult res;
    res.assignments = std::move(o.assign);
    res.centroids = std::move(o.centroids);
    res.sse = o.sse;
    res.chosen_k = k;
    res.iterations_run = o.iterations;
    res.sse_trace = std::move(o.trace);
    return res;
}

}  // namespace

ClusterResult kmeans(const Points& points, const KMeansConfig& config) {
    const std::size_t k = config.k.value_or(0);
    check_points(points, k);
    return to_result(best_of_restarts(points, k, config), k);
}

namespace {

std::vector<LloydOutcome> sweep(const Points& pts, std::size_t k_max,
                                const KMeansConfig& cfg) {
    check_points(pts, k_max);
    std::vector<LloydOutcome> out;
    out.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        auto best = best_of_restarts(pts, k, cfg);
        if (k >= 2) {
            // warm start: previous solution plus its worst point as a center;
            // guarantees the curve never rises with k
            const auto& prev = out.back();
            std::size_t far = 0;
            double fd = -1;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double d = sq_dist(pts[i], prev.centroids[prev.assign[i]]);
                if (d > fd) {
                    fd = d;
                    far = i;
                }
            }
            Points centers = prev.centroids;
            centers.push_back(pts[far]);
            auto warm = lloyd(pts, std::move(centers), cfg.max_iterations,
                              cfg.tolerance);
            if (warm.sse < best.sse) best = std::move(warm);
        }
        out.push_back(std::move(best));
    }
    return out;
}

}  // namespace

std::vector<std::pair<std::size_t, double>> sse_curve(const Points& points,
                                                      std::size_t k_max,
                                                      const KMeansConfig& config) {
    auto runs = sweep(points, k_max, config);
    std::vector<std::pair<std::size_t, double>> curve;
    curve.reserve(runs.size());
    for (std::size_t k = 1; k <= k_max; ++k) curve.emplace_back(k, runs[k - 1].sse);
    return curve;
}

std::size_t choose_k_elbow(const std::vector<std::pair<std::size_t, double>>& curve) {
    if (curve.size() < 3) {
        throw Error(ErrorCode::CurveTooShort,
                    "elbow needs k = 1..k_max with k_max >= 3");
    }
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve[i].first != i + 1) {
            throw Error(ErrorCode::CurveTooShort, "curve must cover k = 1..k_max");
        }
    }
    const double scale = std::max(curve.front().second - curve.back().second, 1e-30);
    const double eps = 1e-9 * scale;
    std::size_t best_k = curve[1].first;
    double best_score = -1;
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double drop_in = std::max(curve[i - 1].second - curve[i].second, 0.0);
        const double drop_out = std::max(curve[i].second - curve[i + 1].second, 0.0);
        const double score = drop_in / (drop_out + eps);
        if (score > best_score + 1e-12) {
            best_score = score;
            best_k = curve[i].first;
        }
    }
    return best_k;
}

SecondFilterResult second_filter(const SimilarityProfile& profile,
                                 const KMeansConfig& config) {
    if (profile.entries.size() < 3) {
        throw Error(ErrorCode::EmptyInput,
                    "second filter needs at least 3 profile entries");
    }
    Points pts;
    pts.reserve(profile.entries.size() + 1);
    for (const auto& e : profile.entries) {
        pts.push_back({e.sim_alpha, e.sim_beta});
    }
    pts.push_back({1.0, 1.0});  // the target's self-similarity

    auto curve = sse_curve(pts, std::min<std::size_t>(8, pts.size() - 1), config);
    const std::size_t k = config.k ? *config.k : choose_k_elbow(curve);

    KMeansConfig final_cfg = config;
    final_cfg.k = k;
    ClusterResult res = kmeans(pts, final_cfg);
    res.sse_curve = curve;
    res.chosen_k = k;

    SecondFilterResult out;
    const std::size_t target_cluster = res.assignments.back();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (res.assignments[i] == target_cluster) {
            out.recommended.insert(profile.entries[i].region);
        }
    }
    out.clustering = std::move(res);
    out.points = std::move(pts);
    return out;
}

BaselineResult baseline_kmeans(const NormalizedDataset& normalized,
                               const std::string& target, std::size_t k,
                               const KMeansConfig& config) {
    if (!normalized.find(target)) {
        throw Error(ErrorCode::UnknownRegion, "no region named '" + target + "'");
    }
    Points pts;
    pts.reserve(normalized.records.size());
    std::size_t target_idx = 0;
    for (std::size_t i = 0; i < normalized.records.size(); ++i) {
        const auto& r = normalized.records[i];
        if (r.region == target) target_idx = i;
        pts.emplace_back(r.values.begin(), r.values.end());
    }
    KMeansConfig cfg = config;
    cfg.k = k;
    ClusterResult res = kmeans(pts, cfg);

    BaselineResult out;
    const std::size_t target_cluster = res.assignments[target_idx];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i != target_idx && res.assignments[i] == target_cluster) {
            out.recommended.insert(normalized.records[i].region);
        }
    }
    out.clustering = std::move(res);
    return out;
}

std::string cluster_assignments_to_csv(const std::vector<std::string>& names,
                                       const ClusterResult& result) {
    std::string out = "region,cluster\n";
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += csv_quote(names[i]) + "," + std::to_string(result.assignments[i]) + "\n";
    }
    return out;
}

std::string sse_curve_to_csv(const std::vector<std::pair<std::size_t, double>>& curve) {
    std::string out = "k,sse\n";
    for (const auto& [k, sse] : curve) {
        out += std::to_string(k) + "," + format_double(sse) + "\n";
    }
    return out;
}

}  // namespace stdsa
