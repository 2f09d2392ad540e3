#include "stdsa/schema.hpp"
#include "stdsa/error.hpp"

#include <cctype>
#include <cmath>

namespace stdsa {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::DuplicateRegion: return "DuplicateRegion";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::UnknownRegion: return "UnknownRegion";
        case ErrorCode::PTooLarge: return "PTooLarge";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::ConstantColumn: return "ConstantColumn";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::KTooLarge: return "KTooLarge";
        case ErrorCode::CurveTooShort: return "CurveTooShort";
        case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    }
    return "UnknownError";
}

const char* to_string(Dimension d) {
    switch (d) {
        case Dimension::Alpha: return "alpha";
        case Dimension::Beta: return "beta";
        case Dimension::Gamma: return "gamma";
    }
    return "?";
}

const IndicatorSchema& IndicatorSchema::standard() {
    static const IndicatorSchema schema{{
        {"infection", Dimension::Gamma, "Infection"},
        {"government_risk_management", Dimension::Alpha, "Government Risk Management"},
        {"emergency_preparedness", Dimension::Alpha, "Emergency Preparedness"},
        {"care_quality_access", Dimension::Alpha, "Quality and Accessibility of Care"},
        {"education_level", Dimension::Beta, "Education Level"},
        {"young_distribution", Dimension::Beta, "Young Distribution"},
        {"population_density", Dimension::Beta, "Population Density"},
        {"mass_living_level", Dimension::Beta, "Mass Living Level"},
        {"monitoring_diagnosis", Dimension::Alpha, "Monitoring and Diagnosis"},
    }};
    return schema;
}

std::optional<std::size_t> IndicatorSchema::index_of(std::string_view key) const {
    for (std::size_t i = 0; i < indicators_.size(); ++i) {
        if (indicators_[i].key == key) return i;
    }
    return std::nullopt;
}

std::vector<std::size_t> IndicatorSchema::dimension_indices(Dimension d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < indicators_.size(); ++i) {
        if (indicators_[i].dimension == d) out.push_back(i);
    }
    return out;
}

IndicatorSchema default_schema() { return IndicatorSchema::standard(); }

double RegionRecord::value(std::string_view key) const {
    auto idx = IndicatorSchema::standard().index_of(key);
    return idx ? values[*idx] : std::nan("");
}

std::optional<std::string> validate_record(const RegionRecord& rec) {
    if (rec.region.empty()) return "empty region name";
    for (std::size_t i = 0; i < rec.values.size(); ++i) {
        if (!std::isfinite(rec.values[i])) {
            return "non-finite value for " + IndicatorSchema::standard().at(i).key;
        }
    }
    const double infection = rec.values[0];
    if (infection < 0.0 || infection > 1.0) return "infection outside [0, 1]";
    if (rec.value("population_density") < 0.0) return "negative population density";
    return std::nullopt;
}

const RegionRecord* Dataset::find(std::string_view region) const {
    for (const auto& r : records) {
        if (r.region == region) return &r;
    }
    return nullptr;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace stdsa
