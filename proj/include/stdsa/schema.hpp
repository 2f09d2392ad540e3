#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stdsa {

inline constexpr std::size_t kIndicatorCount = 9;

enum class Dimension { Alpha, Beta, Gamma };

const char* to_string(Dimension d);

struct IndicatorDef {
    std::string key;
    Dimension dimension;
    std::string display_name;

    bool operator==(const IndicatorDef&) const = default;
};

/// The fixed nine-indicator evaluation system: four national-base (alpha)
/// indices, four social-resilience (beta) indicators and the infection
/// rate (gamma). Column order matches the CSV layout.
class IndicatorSchema {
public:
    static const IndicatorSchema& standard();

    const std::vector<IndicatorDef>& indicators() const { return indicators_; }
    std::size_t size() const { return indicators_.size(); }
    const IndicatorDef& at(std::size_t i) const { return indicators_[i]; }

    std::optional<std::size_t> index_of(std::string_view key) const;
    std::vector<std::size_t> dimension_indices(Dimension d) const;

    bool operator==(const IndicatorSchema&) const = default;

private:
    explicit IndicatorSchema(std::vector<IndicatorDef> defs)
        : indicators_(std::move(defs)) {}
    std::vector<IndicatorDef> indicators_;
};

IndicatorSchema default_schema();

/// One region's raw indicator values, keyed by schema column order.
struct RegionRecord {
    std::string region;
    std::array<double, kIndicatorCount> values{};

    double value(std::string_view key) const;
    bool operator==(const RegionRecord&) const = default;
};

/// Validates a record against the schema invariants (finite values,
/// infection in [0,1], non-negative density). Returns an explanation on
/// failure, empty optional when valid.
std::optional<std::string> validate_record(const RegionRecord& rec);

struct Dataset {
    std::vector<RegionRecord> records;
    IndicatorSchema schema = IndicatorSchema::standard();

    const RegionRecord* find(std::string_view region) const;
    bool operator==(const Dataset&) const = default;
};

/// Trims surrounding ASCII whitespace; region names compare case-sensitively
/// after this.
std::string trim(std::string_view s);

}  // namespace stdsa
