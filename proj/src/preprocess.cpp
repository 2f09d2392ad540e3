#include "stdsa/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "stdsa/csv.hpp"
#include "stdsa/error.hpp"

namespace stdsa {

const NormalizedRecord* NormalizedDataset::find(std::string_view region) const {
    for (const auto& r : records) {
        if (r.region == region) return &r;
    }
    return nullptr;
}

NormalizedDataset normalize(const Dataset& dataset) {
    if (dataset.records.empty()) {
        throw Error(ErrorCode::EmptyInput, "normalize needs a non-empty dataset");
    }
    NormalizedDataset out;
    out.schema = dataset.schema;
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        double mn = std::numeric_limits<double>::infinity();
        double mx = -mn;
        for (const auto& rec : dataset.records) {
            mn = std::min(mn, rec.values[i]);
            mx = std::max(mx, rec.values[i]);
        }
        out.bounds[i] = {mn, mx};
        if (mx <= mn) {
            out.warnings.push_back("degenerate indicator '" +
                                   dataset.schema.at(i).key +
                                   "' (max == min); values mapped to 0");
        }
    }
    out.records.reserve(dataset.records.size());
    for (const auto& rec : dataset.records) {
        NormalizedRecord nr;
        nr.region = rec.region;
        for (std::size_t i = 0; i < kIndicatorCount; ++i) {
            auto [mn, mx] = out.bounds[i];
            nr.values[i] = mx > mn ? (rec.values[i] - mn) / (mx - mn) : 0.0;
        }
        out.records.push_back(std::move(nr));
    }
    return out;
}

namespace {

// type-7 quantile: linear interpolation between order statistics
double quantile_sorted(const std::vector<double>& x, double p) {
    if (x.size() == 1) return x[0];
    double h = p * static_cast<double>(x.size() - 1);
    auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= x.size()) return x.back();
    return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
}

}  // namespace

IndicatorStats box_stats(const Dataset& dataset) {
    if (dataset.records.empty()) {
        throw Error(ErrorCode::EmptyInput, "box_stats needs a non-empty dataset");
    }
    IndicatorStats stats;
    stats.schema = dataset.schema;
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        std::vector<double> col;
        col.reserve(dataset.records.size());
        for (const auto& rec : dataset.records) col.push_back(rec.values[i]);
        std::sort(col.begin(), col.end());

        BoxSummary& b = stats.per_indicator[i];
        b.min = col.front();
        b.max = col.back();
        b.q1 = quantile_sorted(col, 0.25);
        b.median = quantile_sorted(col, 0.5);
        b.q3 = quantile_sorted(col, 0.75);
        const double iqr = b.q3 - b.q1;
        const double lo = b.q1 - 1.5 * iqr;
        const double hi = b.q3 + 1.5 * iqr;
        for (const auto& rec : dataset.records) {
            if (rec.values[i] < lo || rec.values[i] > hi) {
                b.outliers.emplace_back(rec.region, rec.values[i]);
            }
        }
    }
    return stats;
}

double CorrelationMatrix::at(std::string_view a, std::string_view b) const {
    auto ia = schema.index_of(a);
    auto ib = schema.index_of(b);
    if (!ia || !ib) throw Error(ErrorCode::UnknownRegion, "unknown indicator key");
    return values[*ia][*ib];
}

CorrelationMatrix pcc_matrix(const Dataset& dataset) {
    const std::size_t n = dataset.records.size();
    if (n < 2) {
        throw Error(ErrorCode::EmptyInput, "pcc_matrix needs at least 2 regions");
    }
    std::array<double, kIndicatorCount> mean{};
    for (const auto& rec : dataset.records) {
        for (std::size_t i = 0; i < kIndicatorCount; ++i) mean[i] += rec.values[i];
    }
    for (auto& m : mean) m /= static_cast<double>(n);

    std::array<double, kIndicatorCount> ss{};
    for (const auto& rec : dataset.records) {
        for (std::size_t i = 0; i < kIndicatorCount; ++i) {
            const double d = rec.values[i] - mean[i];
            ss[i] += d * d;
        }
    }
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        if (ss[i] <= 0.0) {
            throw Error(ErrorCode::ConstantColumn,
                        "indicator '" + dataset.schema.at(i).key +
                            "' is constant across regions");
        }
    }

    CorrelationMatrix m;
    m.schema = dataset.schema;
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        for (std::size_t j = i; j < kIndicatorCount; ++j) {
            double cov = 0;
            for (const auto& rec : dataset.records) {
                cov += (rec.values[i] - mean[i]) * (rec.values[j] - mean[j]);
            }
            const double r = cov / std::sqrt(ss[i] * ss[j]);
            m.values[i][j] = m.values[j][i] = std::clamp(r, -1.0, 1.0);
        }
        m.values[i][i] = 1.0;
    }
    return m;
}

std::string correlation_to_csv(const CorrelationMatrix& m) {
    std::string out = "indicator";
    for (const auto& ind : m.schema.indicators()) out += "," + ind.key;
    out += "\n";
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        out += m.schema.at(i).key;
        for (std::size_t j = 0; j < kIndicatorCount; ++j) {
            out += "," + format_double(m.values[i][j]);
        }
        out += "\n";
    }
    return out;
}

std::string box_stats_to_csv(const IndicatorStats& stats) {
    std::string out = "indicator,min,q1,median,q3,max,outlier_count,outliers\n";
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        const auto& b = stats.per_indicator[i];
        out += stats.schema.at(i).key;
        for (double v : {b.min, b.q1, b.median, b.q3, b.max}) {
            out += "," + format_double(v);
        }
        out += "," + std::to_string(b.outliers.size());
        std::string names;
        for (const auto& [region, value] : b.outliers) {
            if (!names.empty()) names += ";";
            names += region;
        }
        out += "," + csv_quote(names) + "\n";
    }
    return out;
}

void save_normalized(const NormalizedDataset& nd, const std::filesystem::path& path) {
    Dataset as_ds;
    as_ds.schema = nd.schema;
    for (const auto& r : nd.records) {
        RegionRecord rec;
        rec.region = r.region;
        rec.values = r.values;
        as_ds.records.push_back(std::move(rec));
    }
    save_dataset(as_ds, path);

    std::filesystem::path side = path;
    side += ".bounds.csv";
    std::ofstream out(side, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + side.string());
    out << "key,min,max\n";
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        out << nd.schema.at(i).key << "," << format_double(nd.bounds[i].first)
            << "," << format_double(nd.bounds[i].second) << "\n";
    }
}

NormalizedDataset load_normalized(const std::filesystem::path& path) {
    auto [ds, report] = load_csv(path);
    NormalizedDataset nd;
    nd.schema = ds.schema;
    for (const auto& rec : ds.records) {
        NormalizedRecord nr;
        nr.region = rec.region;
        nr.values = rec.values;
        nd.records.push_back(std::move(nr));
    }
    std::filesystem::path side = path;
    side += ".bounds.csv";
    std::ifstream in(side, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + side.string());
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw Error(ErrorCode::ParseError, "bad bounds row: " + line);
        }
        auto idx = nd.schema.index_of(trim(fields[0]));
        if (!idx) throw Error(ErrorCode::ParseError, "unknown key: " + fields[0]);
        nd.bounds[*idx] = {std::stod(fields[1]), std::stod(fields[2])};
    }
    return nd;
}

}  // namespace stdsa
