#include "stdsa/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unordered_set>

#include "stdsa/error.hpp"

namespace stdsa {

std::string csv_quote(std::string_view field) {
    bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

static bool parse_double(const std::string& s, double& out) {
    std::string t = trim(s);
    if (t.empty()) return false;
    auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    return res.ec == std::errc{} && res.ptr == t.data() + t.size();
}

std::pair<Dataset, IngestReport> parse_csv(const std::string& text) {
    const auto& schema = IndicatorSchema::standard();
    Dataset ds;
    IngestReport report;

    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    if (lines.empty()) {
        throw Error(ErrorCode::MissingColumn, "empty file, no header");
    }

    auto header = split_csv_line(lines[0]);
    std::vector<std::size_t> col_of(kIndicatorCount, SIZE_MAX);
    std::size_t region_col = SIZE_MAX;
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::string key = trim(header[c]);
        if (key == "region") region_col = c;
        if (auto idx = schema.index_of(key)) col_of[*idx] = c;
    }
    if (region_col == SIZE_MAX) {
        throw Error(ErrorCode::MissingColumn, "header lacks 'region'");
    }
    for (std::size_t i = 0; i < kIndicatorCount; ++i) {
        if (col_of[i] == SIZE_MAX) {
            throw Error(ErrorCode::MissingColumn,
                        "header lacks '" + schema.at(i).key + "'");
        }
    }

    std::unordered_set<std::string> seen;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty()) continue;
        ++report.rows_read;
        auto fields = split_csv_line(lines[li]);
        if (fields.size() < header.size()) {
            report.rejects.emplace_back(li + 1, "too few fields");
            continue;
        }
        RegionRecord rec;
        rec.region = trim(fields[region_col]);
        bool bad = false;
        for (std::size_t i = 0; i < kIndicatorCount && !bad; ++i) {
            if (!parse_double(fields[col_of[i]], rec.values[i])) {
                report.rejects.emplace_back(
                    li + 1, "non-numeric " + schema.at(i).key + " cell '" +
                                trim(fields[col_of[i]]) + "'");
                bad = true;
            }
        }
        if (bad) continue;
        if (auto why = validate_record(rec)) {
            report.rejects.emplace_back(li + 1, *why);
            continue;
        }
        if (!seen.insert(rec.region).second) {
            report.rejects.emplace_back(li + 1,
                                        "duplicate region '" + rec.region + "'");
            continue;
        }
        ds.records.push_back(std::move(rec));
        ++report.rows_accepted;
    }
    return {std::move(ds), std::move(report)};
}

std::pair<Dataset, IngestReport> load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

std::string dataset_to_csv(const Dataset& dataset) {
    const auto& schema = dataset.schema;
    std::string out = "region";
    for (const auto& ind : schema.indicators()) {
        out += ",";
        out += ind.key;
    }
    out += "\n";
    for (const auto& rec : dataset.records) {
        out += csv_quote(rec.region);
        for (std::size_t i = 0; i < kIndicatorCount; ++i) {
            out += ",";
            out += format_double(rec.values[i]);
        }
        out += "\n";
    }
    return out;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    out << dataset_to_csv(dataset);
    if (!out) {
        throw Error(ErrorCode::IoError, "write failed for " + path.string());
    }
}

}  // namespace stdsa
