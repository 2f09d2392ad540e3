#include "stdsa/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iterator>

#include "json.hpp"

#include "stdsa/csv.hpp"
#include "stdsa/error.hpp"

namespace stdsa {

namespace {

using json = nlohmann::ordered_json;

std::string utc_now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.code(), e.what(), name);
    }
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

RecommendationReport run_stdsa(const Dataset& dataset, const std::string& target,
                               const PipelineParams& params) {
    RecommendationReport rep;
    rep.target = target;
    rep.p = params.p;
    rep.baseline_k = params.baseline_k;
    rep.seed = params.seed;
    rep.restarts = params.restarts;

    KMeansConfig kcfg;
    kcfg.k = params.k;
    kcfg.seed = params.seed;
    kcfg.restarts = params.restarts;

    rep.normalized = stage("normalize", [&] { return normalize(dataset); });
    rep.neighbor_set = stage("first_filter", [&] {
        return first_filter(rep.normalized, target, params.p);
    });
    rep.profile = stage("similarity_profile", [&] {
        return similarity_profile(rep.normalized, rep.neighbor_set);
    });
    rep.second = stage("second_filter", [&] {
        return second_filter(rep.profile, kcfg);
    });
    rep.stdsa_recommended = rep.second.recommended;
    rep.chosen_k = rep.second.clustering.chosen_k;
    rep.second_filter_curve = rep.second.clustering.sse_curve;
    rep.metrics = stage("metrics", [&] {
        return metrics(rep.second.points, params.metric_options);
    });
    rep.baseline = stage("baseline_kmeans", [&] {
        return baseline_kmeans(rep.normalized, target, params.baseline_k, kcfg);
    });
    rep.baseline_recommended = rep.baseline.recommended;

    rep.dataset_sha256 = sha256_hex(dataset_to_csv(dataset));
    rep.timestamp = utc_now_iso8601();
    return rep;
}

ComparisonSummary compare(const RecommendationReport& report) {
    ComparisonSummary s;
    s.stdsa_size = report.stdsa_recommended.size();
    s.baseline_size = report.baseline_recommended.size();
    std::set_intersection(
        report.stdsa_recommended.begin(), report.stdsa_recommended.end(),
        report.baseline_recommended.begin(), report.baseline_recommended.end(),
        std::inserter(s.intersection, s.intersection.begin()));
    s.stdsa_subset_of_baseline = std::includes(report.baseline_recommended.begin(),
                                               report.baseline_recommended.end(),
                                               report.stdsa_recommended.begin(),
                                               report.stdsa_recommended.end());
    return s;
}

std::string report_to_json(const RecommendationReport& report) {
    json j;
    j["target"] = report.target;
    j["parameters"] = {{"p", report.p},
                       {"chosen_k", report.chosen_k},
                       {"baseline_k", report.baseline_k},
                       {"seed", report.seed},
                       {"restarts", report.restarts}};
    json neigh = json::array();
    for (const auto& [name, dist] : report.neighbor_set.neighbors) {
        neigh.push_back({{"region", name}, {"distance", dist}});
    }
    j["neighbor_set"] = neigh;
    json prof = json::array();
    for (const auto& e : report.profile.entries) {
        json pe = {{"region", e.region},
                   {"sim_alpha", e.sim_alpha},
                   {"sim_beta", e.sim_beta}};
        if (e.degenerate) pe["degenerate"] = true;
        prof.push_back(pe);
    }
    j["similarity_profile"] = prof;
    j["stdsa_recommended"] = report.stdsa_recommended;
    j["baseline_recommended"] = report.baseline_recommended;
    j["metrics"] = {{"contrast", report.metrics.contrast},
                    {"intrinsic_dim", report.metrics.intrinsic_dim},
                    {"contrast_variant", to_string(report.metrics.contrast_variant)},
                    {"intrinsic_variant", to_string(report.metrics.intrinsic_variant)}};
    if (!report.metrics.warnings.empty()) {
        j["metrics"]["warnings"] = report.metrics.warnings;
    }
    json curve = json::array();
    for (const auto& [k, sse] : report.second_filter_curve) {
        curve.push_back({{"k", k}, {"sse", sse}});
    }
    j["second_filter_sse_curve"] = curve;
    const auto cmp = compare(report);
    j["comparison"] = {{"stdsa_size", cmp.stdsa_size},
                       {"baseline_size", cmp.baseline_size},
                       {"intersection", cmp.intersection},
                       {"stdsa_subset_of_baseline", cmp.stdsa_subset_of_baseline}};
    j["provenance"] = {{"dataset_sha256", report.dataset_sha256},
                       {"timestamp", report.timestamp}};
    if (!report.normalized.warnings.empty()) {
        j["warnings"] = report.normalized.warnings;
    }
    return j.dump(2) + "\n";
}

std::string report_to_text(const RecommendationReport& report) {
    std::string out;
    out += "target: " + report.target + "\n";
    out += "parameters: p=" + std::to_string(report.p) +
           " chosen_k=" + std::to_string(report.chosen_k) +
           " baseline_k=" + std::to_string(report.baseline_k) +
           " seed=" + std::to_string(report.seed) +
           " restarts=" + std::to_string(report.restarts) + "\n";
    out += "neighbors:";
    for (const auto& [name, dist] : report.neighbor_set.neighbors) {
        out += " " + name + " (" + format_double(dist) + ")";
        out += ";";
    }
    out += "\n";
    out += "recommended:";
    if (report.stdsa_recommended.empty()) out += " (none)";
    for (const auto& r : report.stdsa_recommended) out += " " + r + ";";
    out += "\n";
    const auto cmp = compare(report);
    out += "baseline cluster size: " + std::to_string(cmp.baseline_size) +
           ", containment: " + (cmp.stdsa_subset_of_baseline ? "yes" : "no") + "\n";
    out += "contrast: " + format_double(report.metrics.contrast) +
           " (" + to_string(report.metrics.contrast_variant) + ")\n";
    out += "intrinsic_dim: " + format_double(report.metrics.intrinsic_dim) +
           " (" + to_string(report.metrics.intrinsic_variant) + ")\n";
    out += "dataset sha256: " + report.dataset_sha256 + "\n";
    out += "timestamp: " + report.timestamp + "\n";
    return out;
}

}  // namespace stdsa
