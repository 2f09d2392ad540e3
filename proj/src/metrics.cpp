#include "stdsa/metrics.hpp"

#include <cmath>
#include <limits>

#include "stdsa/error.hpp"

namespace stdsa {

namespace {

double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

MetricsReport metrics(const std::vector<std::vector<double>>& points,
                      const MetricOptions& options) {
    const std::size_t n = points.size();
    if (n < 3) {
        throw Error(ErrorCode::EmptyInput, "metrics needs at least 3 points");
    }
    for (const auto& p : points) {
        if (p.size() != points[0].size()) {
            throw Error(ErrorCode::DimensionMismatch, "points of differing dimension");
        }
    }

    MetricsReport rep;
    rep.contrast_variant = options.contrast;
    rep.intrinsic_variant = options.intrinsic;

    std::vector<std::vector<double>> D(n, std::vector<double>(n, 0.0));
    std::vector<double> flat;
    flat.reserve(n * (n - 1) / 2);
    std::size_t coincident = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dist(points[i], points[j]);
            D[i][j] = D[j][i] = d;
            if (d == 0.0) {
                ++coincident;
            } else {
                flat.push_back(d);
            }
        }
    }
    if (coincident > 0) {
        rep.warnings.push_back(std::to_string(coincident) +
                               " coincident pair(s) excluded");
    }
    if (flat.empty()) {
        throw Error(ErrorCode::DegenerateGeometry, "all points coincide");
    }

    // per-point nearest / farthest over positive distances
    auto near_far = [&](std::size_t i) {
        double nearest = std::numeric_limits<double>::infinity();
        double farthest = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || D[i][j] == 0.0) continue;
            nearest = std::min(nearest, D[i][j]);
            farthest = std::max(farthest, D[i][j]);
        }
        return std::pair{nearest, farthest};
    };

    switch (options.contrast) {
        case ContrastVariant::AnchorSpread: {
            const std::size_t a = options.anchor.value_or(n - 1);
            if (a >= n) {
                throw Error(ErrorCode::DimensionMismatch,
                            "anchor index out of range");
            }
            auto [nr, fr] = near_far(a);
            if (!std::isfinite(nr)) {
                throw Error(ErrorCode::DegenerateGeometry,
                            "anchor coincides with every other point");
            }
            rep.contrast = (fr - nr) / nr;
            break;
        }
        case ContrastVariant::MeanSpread:
        case ContrastVariant::MeanRatio: {
            double acc = 0;
            std::size_t used = 0;
            for (std::size_t i = 0; i < n; ++i) {
                auto [nr, fr] = near_far(i);
                if (!std::isfinite(nr)) continue;
                acc += options.contrast == ContrastVariant::MeanSpread
                           ? (fr - nr) / nr
                           : fr / nr;
                ++used;
            }
            if (used == 0) {
                throw Error(ErrorCode::DegenerateGeometry, "no usable points");
            }
            rep.contrast = acc / static_cast<double>(used);
            break;
        }
    }

    double mean = 0;
    for (double d : flat) mean += d;
    mean /= static_cast<double>(flat.size());
    double var = 0;
    for (double d : flat) var += (d - mean) * (d - mean);
    var /= static_cast<double>(flat.size());
    // zero up to distance rounding: all positive distances equal
    if (var <= 1e-20 * mean * mean) {
        throw Error(ErrorCode::DegenerateGeometry,
                    "pairwise distances have zero variance");
    }
    rep.intrinsic_dim = options.intrinsic == IntrinsicVariant::Half
                            ? mean * mean / (2.0 * var)
                            : mean * mean / var;
    return rep;
}

const char* to_string(ContrastVariant v) {
    switch (v) {
        case ContrastVariant::AnchorSpread: return "anchor_spread";
        case ContrastVariant::MeanSpread: return "mean_spread";
        case ContrastVariant::MeanRatio: return "mean_ratio";
    }
    return "?";
}

const char* to_string(IntrinsicVariant v) {
    switch (v) {
        case IntrinsicVariant::Half: return "half";
        case IntrinsicVariant::NoFactor: return "no_factor";
    }
    return "?";
}

std::optional<ContrastVariant> contrast_variant_from(const std::string& name) {
    if (name == "anchor_spread") return ContrastVariant::AnchorSpread;
    if (name == "mean_spread") return ContrastVariant::MeanSpread;
    if (name == "mean_ratio") return ContrastVariant::MeanRatio;
    return std::nullopt;
}

std::optional<IntrinsicVariant> intrinsic_variant_from(const std::string& name) {
    if (name == "half") return IntrinsicVariant::Half;
    if (name == "no_factor") return IntrinsicVariant::NoFactor;
    return std::nullopt;
}

}  // namespace stdsa
