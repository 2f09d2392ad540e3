#pragma once

#include <optional>
#include <string>
#include <vector>

namespace stdsa {

/// Contrast formula choices. AnchorSpread evaluates the relative spread at a
/// single anchor point (the pipeline anchors the target, which it keeps as
/// the last point); the Mean* variants aggregate over every point.
enum class ContrastVariant { AnchorSpread, MeanSpread, MeanRatio };

/// Intrinsic-dimension estimator from the pairwise-distance histogram:
/// mean^2 / (2 var) (Chavez estimator) or the same without the factor 2.
enum class IntrinsicVariant { Half, NoFactor };

struct MetricOptions {
    ContrastVariant contrast = ContrastVariant::AnchorSpread;
    IntrinsicVariant intrinsic = IntrinsicVariant::Half;
    std::optional<std::size_t> anchor;  // defaults to the last point
};

struct MetricsReport {
    double contrast = 0;
    double intrinsic_dim = 0;
    ContrastVariant contrast_variant = ContrastVariant::AnchorSpread;
    IntrinsicVariant intrinsic_variant = IntrinsicVariant::Half;
    std::vector<std::string> warnings;
};

/// Cluster-geometry metrics over a point set (>= 3 points, not all equal).
/// Coincident pairs are excluded with a warning; if the remaining distance
/// histogram has zero variance the geometry is degenerate and the call
/// throws DegenerateGeometry.
MetricsReport metrics(const std::vector<std::vector<double>>& points,
                      const MetricOptions& options = {});

const char* to_string(ContrastVariant v);
const char* to_string(IntrinsicVariant v);
std::optional<ContrastVariant> contrast_variant_from(const std::string& name);
std::optional<IntrinsicVariant> intrinsic_variant_from(const std::string& name);

}  // namespace stdsa
