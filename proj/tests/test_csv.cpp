#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <random>

#include "stdsa/csv.hpp"
#include "stdsa/error.hpp"
#include "support/oracles.hpp"

using namespace stdsa;

namespace {

const char* kHeader =
    "region,infection,government_risk_management,emergency_preparedness,"
    "care_quality_access,education_level,young_distribution,population_density,"
    "mass_living_level,monitoring_diagnosis";

std::string with_header(const std::string& rows) {
    return std::string(kHeader) + "\n" + rows;
}

}  // namespace

TEST_CASE("parses a well-formed row") {
    auto [ds, report] = parse_csv(
        with_header("Germany,0.21,194,79,92,24,14,240.4,4.6,102\n"));
    REQUIRE(report.rows_accepted == 1);
    CHECK(report.rows_read == 1);
    CHECK(report.rejects.empty());
    const auto& rec = ds.records[0];
    CHECK(rec.region == "Germany");
    CHECK(rec.value("infection") == doctest::Approx(0.21));
    CHECK(rec.value("government_risk_management") == 194);
    CHECK(rec.value("emergency_preparedness") == 79);
    CHECK(rec.value("care_quality_access") == 92);
    CHECK(rec.value("education_level") == 24);
    CHECK(rec.value("young_distribution") == 14);
    CHECK(rec.value("population_density") == doctest::Approx(240.4));
    CHECK(rec.value("mass_living_level") == doctest::Approx(4.6));
    CHECK(rec.value("monitoring_diagnosis") == 102);
}

TEST_CASE("empty file with valid header") {
    auto [ds, report] = parse_csv(with_header(""));
    CHECK(ds.records.empty());
    CHECK(report.rows_read == 0);
    CHECK(report.rows_accepted == 0);
}

TEST_CASE("non-numeric cell rejects only that row") {
    auto [ds, report] = parse_csv(with_header(
        "Aland,0.1,abc,79,92,24,14,240.4,4.6,102\n"
        "Bland,0.2,120,79,92,24,14,240.4,4.6,102\n"));
    CHECK(report.rows_read == 2);
    CHECK(report.rows_accepted == 1);
    REQUIRE(report.rejects.size() == 1);
    CHECK(report.rejects[0].first == 2);
    CHECK(ds.records[0].region == "Bland");
    CHECK(report.rows_accepted + report.rejects.size() == report.rows_read);
}

TEST_CASE("duplicate region: later row rejected") {
    auto [ds, report] = parse_csv(with_header(
        "Aland,0.1,120,79,92,24,14,240.4,4.6,102\n"
        "Aland,0.2,130,79,92,24,14,240.4,4.6,102\n"));
    CHECK(report.rows_accepted == 1);
    CHECK(ds.records[0].value("infection") == doctest::Approx(0.1));
    REQUIRE(report.rejects.size() == 1);
}

TEST_CASE("missing column is a hard error") {
    CHECK_THROWS_AS(parse_csv("region,infection\nX,0.1\n"), Error);
    try {
        parse_csv("region,infection\nX,0.1\n");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingColumn);
    }
}

TEST_CASE("rejected rows do not alter accepted rows") {
    std::string clean =
        "Aland,0.1,120,79,92,24,14,240.4,4.6,102\n"
        "Bland,0.2,130,79,92,24,14,240.4,4.6,102\n";
    std::string dirty =
        "Aland,0.1,120,79,92,24,14,240.4,4.6,102\n"
        "Broken,xx,120,79,92,24,14,240.4,4.6,102\n"
        "Bland,0.2,130,79,92,24,14,240.4,4.6,102\n";
    auto [ds1, r1] = parse_csv(with_header(clean));
    auto [ds2, r2] = parse_csv(with_header(dirty));
    CHECK(ds1.records == ds2.records);
}

TEST_CASE("round-trip: save then load reproduces the dataset") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        Dataset ds;
        const int n = 1 + static_cast<int>(oracles::uniform(rng, 0, 12));
        for (int i = 0; i < n; ++i) {
            RegionRecord rec;
            rec.region = "Region " + std::to_string(trial) + "_" + std::to_string(i);
            if (i == 0) rec.region = "Town, with comma";
            if (i == 1 && n > 1) rec.region = "Quoted \"name\"";
            rec.values[0] = oracles::uniform(rng, 0, 1);
            for (int v = 1; v < 9; ++v) {
                rec.values[v] = oracles::uniform(rng, 0, 500);
            }
            ds.records.push_back(rec);
        }
        auto text = dataset_to_csv(ds);
        auto [back, report] = parse_csv(text);
        CHECK(report.rejects.empty());
        REQUIRE(back.records.size() == ds.records.size());
        CHECK(back.records == ds.records);  // exact: shortest round-trip decimals
    }
}

TEST_CASE("file save/load on disk") {
    Dataset ds;
    RegionRecord rec;
    rec.region = "Testland";
    rec.values = {0.25, 100.5, 80.25, 70, 20.125, 20, 100, 2.5, 90};
    ds.records.push_back(rec);

    auto path = std::filesystem::temp_directory_path() / "stdsa_roundtrip.csv";
    save_dataset(ds, path);
    auto [back, report] = load_csv(path);
    CHECK(back.records == ds.records);
    std::filesystem::remove(path);
}

TEST_CASE("load_csv of a missing file") {
    CHECK_THROWS_AS(load_csv("/nonexistent/nowhere.csv"), Error);
}
