// Command-line front end: ingest | stats | recommend | baseline | metrics.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "stdsa/csv.hpp"
#include "stdsa/error.hpp"
#include "stdsa/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct CliConfig {
    std::string dataset_path;
    std::string output_dir = ".";
    std::size_t p = 8;
    std::optional<std::size_t> k;  // empty = AUTO
    std::size_t baseline_k = 5;
    std::uint64_t seed = 42;
    std::size_t restarts = 20;
    std::string format = "text";  // json|csv|text
    bool keep_intermediate = false;
    std::string metric_variant;
    std::string target;
    std::string indicator;
    std::string config_file;
    std::string out_path;
};

// key=value file; unknown keys are ignored so configs can be shared between
// subcommands. Flags win over file values, file wins over environment.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) {
        throw stdsa::Error(stdsa::ErrorCode::IoError, "cannot open config " + path);
    }
    std::string line;
    while (std::getline(in, line)) {
        line = stdsa::trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[stdsa::trim(line.substr(0, eq))] = stdsa::trim(line.substr(eq + 1));
    }
    return kv;
}

void apply_config_defaults(CliConfig& cfg, CLI::App& app) {
    std::map<std::string, std::string> kv;
    if (!cfg.config_file.empty()) kv = read_config_file(cfg.config_file);
    auto set_if_unset = [&](const char* flag, const char* key, auto setter) {
        if (app.count(flag) == 0 && kv.count(key)) setter(kv.at(key));
    };
    set_if_unset("--dataset", "dataset", [&](const std::string& v) { cfg.dataset_path = v; });
    set_if_unset("--output-dir", "output_dir", [&](const std::string& v) { cfg.output_dir = v; });
    set_if_unset("--p", "p", [&](const std::string& v) { cfg.p = std::stoul(v); });
    set_if_unset("--k", "k", [&](const std::string& v) { cfg.k = std::stoul(v); });
    set_if_unset("--baseline-k", "baseline_k", [&](const std::string& v) { cfg.baseline_k = std::stoul(v); });
    set_if_unset("--seed", "seed", [&](const std::string& v) { cfg.seed = std::stoull(v); });
    set_if_unset("--restarts", "restarts", [&](const std::string& v) { cfg.restarts = std::stoul(v); });
    set_if_unset("--format", "format", [&](const std::string& v) { cfg.format = v; });
    set_if_unset("--metric-variant", "metric_variant", [&](const std::string& v) { cfg.metric_variant = v; });
    if (cfg.dataset_path.empty()) {
        if (const char* env = std::getenv("STDSA_DATASET")) cfg.dataset_path = env;
    }
}

stdsa::MetricOptions parse_metric_variant(const std::string& text) {
    stdsa::MetricOptions opts;
    std::string rest = text;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string item = stdsa::trim(rest.substr(0, comma));
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw stdsa::Error(stdsa::ErrorCode::ParseError,
                               "metric variant must look like contrast=NAME");
        }
        std::string key = stdsa::trim(item.substr(0, eq));
        std::string val = stdsa::trim(item.substr(eq + 1));
        if (key == "contrast") {
            auto v = stdsa::contrast_variant_from(val);
            if (!v) throw stdsa::Error(stdsa::ErrorCode::ParseError,
                                       "unknown contrast variant '" + val + "'");
            opts.contrast = *v;
        } else if (key == "intrinsic") {
            auto v = stdsa::intrinsic_variant_from(val);
            if (!v) throw stdsa::Error(stdsa::ErrorCode::ParseError,
                                       "unknown intrinsic variant '" + val + "'");
            opts.intrinsic = *v;
        } else {
            throw stdsa::Error(stdsa::ErrorCode::ParseError,
                               "unknown metric key '" + key + "'");
        }
    }
    return opts;
}

stdsa::Dataset load_or_die(const CliConfig& cfg) {
    if (cfg.dataset_path.empty()) {
        throw stdsa::Error(stdsa::ErrorCode::IoError,
                           "no dataset given (--dataset or STDSA_DATASET)");
    }
    auto [ds, report] = stdsa::load_csv(cfg.dataset_path);
    if (!report.rejects.empty()) {
        for (const auto& [line, why] : report.rejects) {
            std::cerr << "warning: line " << line << " rejected: " << why << "\n";
        }
    }
    return std::move(ds);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw stdsa::Error(stdsa::ErrorCode::IoError, "cannot write " + path.string());
    }
    out << content;
}

int cmd_ingest(const CliConfig& cfg) {
    if (cfg.dataset_path.empty()) {
        throw stdsa::Error(stdsa::ErrorCode::IoError,
                           "no dataset given (--dataset or STDSA_DATASET)");
    }
    auto [ds, report] = stdsa::load_csv(cfg.dataset_path);
    if (cfg.format == "json") {
        ordered_json j;
        j["rows_read"] = report.rows_read;
        j["rows_accepted"] = report.rows_accepted;
        ordered_json rej = ordered_json::array();
        for (const auto& [line, why] : report.rejects) {
            rej.push_back({{"line", line}, {"reason", why}});
        }
        j["rejects"] = rej;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "rows read: " << report.rows_read
                  << ", accepted: " << report.rows_accepted
                  << ", rejected: " << report.rejects.size() << "\n";
        for (const auto& [line, why] : report.rejects) {
            std::cout << "  line " << line << ": " << why << "\n";
        }
    }
    if (!cfg.out_path.empty()) stdsa::save_dataset(ds, cfg.out_path);
    return 0;
}

int cmd_stats(const CliConfig& cfg) {
    auto ds = load_or_die(cfg);
    auto stats = stdsa::box_stats(ds);
    auto pcc = stdsa::pcc_matrix(ds);
    auto nd = stdsa::normalize(ds);

    std::vector<std::vector<double>> pts;
    for (const auto& r : nd.records) pts.emplace_back(r.values.begin(), r.values.end());
    stdsa::KMeansConfig kcfg;
    kcfg.seed = cfg.seed;
    kcfg.restarts = cfg.restarts;
    auto curve = stdsa::sse_curve(pts, std::min<std::size_t>(8, pts.size() - 1), kcfg);

    fs::create_directories(cfg.output_dir);
    write_file(fs::path(cfg.output_dir) / "box_summary.csv", stdsa::box_stats_to_csv(stats));
    write_file(fs::path(cfg.output_dir) / "pcc_matrix.csv", stdsa::correlation_to_csv(pcc));
    write_file(fs::path(cfg.output_dir) / "elbow_curve.csv", stdsa::sse_curve_to_csv(curve));

    if (!cfg.indicator.empty()) {
        auto idx = ds.schema.index_of(cfg.indicator);
        if (!idx) {
            throw stdsa::Error(stdsa::ErrorCode::ParseError,
                               "unknown indicator '" + cfg.indicator + "'");
        }
        const auto& b = stats.per_indicator[*idx];
        std::cout << cfg.indicator << " outliers: " << b.outliers.size() << "\n";
        for (const auto& [region, value] : b.outliers) {
            std::cout << "  " << region << " " << stdsa::format_double(value) << "\n";
        }
    } else if (cfg.format != "json" && cfg.format != "csv") {
        std::cout << "wrote box_summary.csv, pcc_matrix.csv, elbow_curve.csv to "
                  << cfg.output_dir << "\n";
    }
    return 0;
}

stdsa::PipelineParams to_params(const CliConfig& cfg) {
    stdsa::PipelineParams params;
    params.p = cfg.p;
    params.k = cfg.k;
    params.baseline_k = cfg.baseline_k;
    params.seed = cfg.seed;
    params.restarts = cfg.restarts;
    if (!cfg.metric_variant.empty()) {
        params.metric_options = parse_metric_variant(cfg.metric_variant);
    }
    return params;
}

int cmd_recommend(const CliConfig& cfg) {
    auto ds = load_or_die(cfg);
    auto report = stdsa::run_stdsa(ds, cfg.target, to_params(cfg));

    fs::create_directories(cfg.output_dir);
    write_file(fs::path(cfg.output_dir) / "report.json", stdsa::report_to_json(report));
    write_file(fs::path(cfg.output_dir) / "report.txt", stdsa::report_to_text(report));
    if (cfg.keep_intermediate) {
        stdsa::save_normalized(report.normalized,
                               fs::path(cfg.output_dir) / "normalized.csv");
        write_file(fs::path(cfg.output_dir) / "neighbors.csv",
                   stdsa::neighbor_set_to_csv(report.neighbor_set));
        write_file(fs::path(cfg.output_dir) / "profile.csv",
                   stdsa::profile_to_csv(report.profile));
        write_file(fs::path(cfg.output_dir) / "second_filter_curve.csv",
                   stdsa::sse_curve_to_csv(report.second_filter_curve));
    }
    if (cfg.format == "json") {
        std::cout << stdsa::report_to_json(report);
    } else if (cfg.format == "csv") {
        std::cout << "region\n";
        for (const auto& r : report.stdsa_recommended) {
            std::cout << stdsa::csv_quote(r) << "\n";
        }
    } else {
        std::cout << stdsa::report_to_text(report);
    }
    return 0;
}

int cmd_baseline(const CliConfig& cfg) {
    auto ds = load_or_die(cfg);
    auto nd = stdsa::normalize(ds);
    stdsa::KMeansConfig kcfg;
    kcfg.seed = cfg.seed;
    kcfg.restarts = cfg.restarts;
    auto result = stdsa::baseline_kmeans(nd, cfg.target, cfg.baseline_k, kcfg);

    std::vector<std::string> names;
    for (const auto& r : nd.records) names.push_back(r.region);
    fs::create_directories(cfg.output_dir);
    write_file(fs::path(cfg.output_dir) / "baseline_clusters.csv",
               stdsa::cluster_assignments_to_csv(names, result.clustering));

    ordered_json j;
    j["target"] = cfg.target;
    j["chosen_k"] = result.clustering.chosen_k;
    j["seed"] = cfg.seed;
    j["sse"] = result.clustering.sse;
    j["iterations_run"] = result.clustering.iterations_run;
    j["centroids"] = result.clustering.centroids;
    j["recommended"] = result.recommended;
    write_file(fs::path(cfg.output_dir) / "baseline.json", j.dump(2) + "\n");
    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "baseline cluster of " << cfg.target << ": "
                  << result.recommended.size() << " similar regions\n";
    }
    return 0;
}

int cmd_metrics(const CliConfig& cfg) {
    auto ds = load_or_die(cfg);
    auto report = stdsa::run_stdsa(ds, cfg.target, to_params(cfg));
    ordered_json j;
    j["target"] = cfg.target;
    j["contrast"] = report.metrics.contrast;
    j["intrinsic_dim"] = report.metrics.intrinsic_dim;
    j["contrast_variant"] = stdsa::to_string(report.metrics.contrast_variant);
    j["intrinsic_variant"] = stdsa::to_string(report.metrics.intrinsic_variant);
    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "contrast: " << stdsa::format_double(report.metrics.contrast)
                  << "\nintrinsic_dim: "
                  << stdsa::format_double(report.metrics.intrinsic_dim) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    CLI::App app{"Region-similarity decision support toolkit"};
    app.require_subcommand(1);

    app.add_option("--dataset", cfg.dataset_path, "dataset CSV path");
    app.add_option("--output-dir", cfg.output_dir, "output directory");
    app.add_option("--p", cfg.p, "neighbor count for the first filter");
    app.add_option("--k", cfg.k, "cluster count for the second filter (default: elbow)");
    app.add_option("--baseline-k", cfg.baseline_k, "cluster count for the baseline");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--restarts", cfg.restarts, "k-means restarts");
    app.add_option("--format", cfg.format, "output format: json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_flag("--keep-intermediate", cfg.keep_intermediate,
                 "persist normalized data, neighbors and profile");
    app.add_option("--metric-variant", cfg.metric_variant,
                   "metric formulas, e.g. contrast=mean_spread,intrinsic=no_factor");
    app.add_option("--config", cfg.config_file, "key=value config file");

    auto* ingest = app.add_subcommand("ingest", "validate a dataset CSV");
    ingest->add_option("--out", cfg.out_path, "write the canonical CSV here");
    auto* stats = app.add_subcommand("stats", "descriptive statistics exports");
    stats->add_option("--indicator", cfg.indicator, "print outliers for one indicator");
    auto* recommend = app.add_subcommand("recommend", "run the full two-filter pipeline");
    recommend->add_option("--target", cfg.target, "target region")->required();
    auto* baseline = app.add_subcommand("baseline", "pure k-means comparison");
    baseline->add_option("--target", cfg.target, "target region")->required();
    auto* metricsc = app.add_subcommand("metrics", "cluster-geometry metrics for a target");
    metricsc->add_option("--target", cfg.target, "target region")->required();
    for (auto* sub : {ingest, stats, recommend, baseline, metricsc}) {
        sub->fallthrough();  // accept the global flags after the subcommand too
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        apply_config_defaults(cfg, app);
        if (ingest->parsed()) return cmd_ingest(cfg);
        if (stats->parsed()) return cmd_stats(cfg);
        if (recommend->parsed()) return cmd_recommend(cfg);
        if (baseline->parsed()) return cmd_baseline(cfg);
        if (metricsc->parsed()) return cmd_metrics(cfg);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const stdsa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
