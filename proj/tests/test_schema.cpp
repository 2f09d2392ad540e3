#include "doctest.h"

#include <limits>
#include <set>

#include "stdsa/schema.hpp"

using namespace stdsa;

TEST_CASE("standard schema shape") {
    auto schema = default_schema();
    CHECK(schema.size() == 9);

    std::size_t alpha = 0, beta = 0, gamma = 0;
    std::set<std::string> keys;
    for (const auto& ind : schema.indicators()) {
        keys.insert(ind.key);
        switch (ind.dimension) {
            case Dimension::Alpha: ++alpha; break;
            case Dimension::Beta: ++beta; break;
            case Dimension::Gamma: ++gamma; break;
        }
    }
    CHECK(alpha == 4);
    CHECK(beta == 4);
    CHECK(gamma == 1);
    CHECK(keys.size() == 9);  // unique
}

TEST_CASE("dimension membership") {
    auto schema = default_schema();
    auto dim_of = [&](const char* key) {
        return schema.at(*schema.index_of(key)).dimension;
    };
    CHECK(dim_of("infection") == Dimension::Gamma);
    CHECK(dim_of("monitoring_diagnosis") == Dimension::Alpha);
    CHECK(dim_of("government_risk_management") == Dimension::Alpha);
    CHECK(dim_of("emergency_preparedness") == Dimension::Alpha);
    CHECK(dim_of("care_quality_access") == Dimension::Alpha);
    CHECK(dim_of("education_level") == Dimension::Beta);
    CHECK(dim_of("young_distribution") == Dimension::Beta);
    CHECK(dim_of("population_density") == Dimension::Beta);
    CHECK(dim_of("mass_living_level") == Dimension::Beta);
}

TEST_CASE("default_schema is a pure constant") {
    CHECK(default_schema() == default_schema());
}

TEST_CASE("record validation") {
    RegionRecord rec;
    rec.region = "Testland";
    rec.values = {0.1, 100, 80, 70, 20, 20, 100, 2.0, 90};
    CHECK(!validate_record(rec));

    SUBCASE("infection out of range") {
        rec.values[0] = 1.5;
        CHECK(validate_record(rec).has_value());
    }
    SUBCASE("negative density") {
        rec.values[6] = -1;
        CHECK(validate_record(rec).has_value());
    }
    SUBCASE("non-finite value") {
        rec.values[3] = std::numeric_limits<double>::quiet_NaN();
        CHECK(validate_record(rec).has_value());
    }
    SUBCASE("empty name") {
        rec.region = "";
        CHECK(validate_record(rec).has_value());
    }
}

TEST_CASE("region name trimming") {
    CHECK(trim("  Sweden \t") == "Sweden");
    CHECK(trim("Sweden") == "Sweden");
    CHECK(trim("  ") == "");
}
