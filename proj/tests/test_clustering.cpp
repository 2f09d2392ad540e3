#include "doctest.h"

#include <random>
#include <set>

#include "stdsa/clustering.hpp"
#include "stdsa/error.hpp"
#include "support/oracles.hpp"

using namespace stdsa;

namespace {

using Points = std::vector<std::vector<double>>;

KMeansConfig cfg_k(std::size_t k, std::uint64_t seed = 42, std::size_t restarts = 20) {
    KMeansConfig c;
    if (k > 0) c.k = k;  // 0 = leave unset (elbow)
    c.seed = seed;
    c.restarts = restarts;
    return c;
}

double recompute_sse(const Points& pts, const ClusterResult& res) {
    double sse = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& c = res.centroids[res.assignments[i]];
        for (std::size_t d = 0; d < pts[i].size(); ++d) {
            const double diff = pts[i][d] - c[d];
            sse += diff * diff;
        }
    }
    return sse;
}

}  // namespace

TEST_CASE("two obvious groups of two") {
    Points pts{{0, 0}, {0, 1}, {10, 10}, {10, 11}};
    auto res = kmeans(pts, cfg_k(2));
    CHECK(res.assignments[0] == res.assignments[1]);
    CHECK(res.assignments[2] == res.assignments[3]);
    CHECK(res.assignments[0] != res.assignments[2]);
    // centroids are the group means
    std::set<std::pair<double, double>> centroids;
    for (const auto& c : res.centroids) centroids.insert({c[0], c[1]});
    CHECK(centroids.count({0.0, 0.5}) == 1);
    CHECK(centroids.count({10.0, 10.5}) == 1);
    CHECK(res.sse == doctest::Approx(oracles::optimal_kmeans_sse(pts, 2)));
}

TEST_CASE("k equal to point count drives SSE to zero") {
    Points pts{{1, 1}, {2, 2}, {3, 3}, {4, 4}};
    auto res = kmeans(pts, cfg_k(4));
    CHECK(res.sse == doctest::Approx(0.0));
    std::set<std::size_t> used(res.assignments.begin(), res.assignments.end());
    CHECK(used.size() == 4);
}

TEST_CASE("k=1 yields the mean and the total scatter") {
    Points pts{{0, 0}, {2, 0}, {4, 0}};
    auto res = kmeans(pts, cfg_k(1));
    CHECK(res.centroids[0][0] == doctest::Approx(2.0));
    CHECK(res.centroids[0][1] == doctest::Approx(0.0));
    CHECK(res.sse == doctest::Approx(8.0));  // (2^2 + 0 + 2^2)
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(kmeans({}, cfg_k(1)), Error);
    CHECK_THROWS_AS(kmeans({{1, 2}, {1}}, cfg_k(1)), Error);
    CHECK_THROWS_AS(kmeans({{1, 2}}, cfg_k(2)), Error);
    CHECK_THROWS_AS(kmeans({{1, 2}}, KMeansConfig{}), Error);  // k unset
}

TEST_CASE("brute-force optimality on random toy instances") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + static_cast<int>(oracles::uniform(rng, 0, 5));   // 4..8
        const int k = 2 + static_cast<int>(oracles::uniform(rng, 0, 2));   // 2..3
        const int dim = 1 + static_cast<int>(oracles::uniform(rng, 0, 2)); // 1..2
        Points pts;
        for (int i = 0; i < n; ++i) {
            std::vector<double> p;
            for (int d = 0; d < dim; ++d) p.push_back(oracles::uniform(rng, -4, 4));
            pts.push_back(p);
        }
        auto res = kmeans(pts, cfg_k(k, 42 + trial, 20));
        const double optimum = oracles::optimal_kmeans_sse(pts, k);
        CHECK(res.sse == doctest::Approx(optimum).epsilon(1e-9));
    }
}

TEST_CASE("SSE is non-increasing across Lloyd iterations") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        Points pts;
        const int n = 10 + static_cast<int>(oracles::uniform(rng, 0, 30));
        for (int i = 0; i < n; ++i) {
            pts.push_back({oracles::uniform(rng, 0, 1), oracles::uniform(rng, 0, 1),
                           oracles::uniform(rng, 0, 1)});
        }
        auto res = kmeans(pts, cfg_k(4, 7 + trial, 1));
        for (std::size_t i = 1; i < res.sse_trace.size(); ++i) {
            CHECK(res.sse_trace[i] <= res.sse_trace[i - 1] + 1e-9);
        }
    }
}

TEST_CASE("identical config gives bit-identical results") {
    std::mt19937_64 rng(66);
    Points pts;
    for (int i = 0; i < 40; ++i) {
        pts.push_back({oracles::uniform(rng, 0, 1), oracles::uniform(rng, 0, 1)});
    }
    auto a = kmeans(pts, cfg_k(5));
    auto b = kmeans(pts, cfg_k(5));
    CHECK(a.assignments == b.assignments);
    CHECK(a.centroids == b.centroids);
    CHECK(a.sse == b.sse);
}

TEST_CASE("reported SSE matches a recomputation from the pieces") {
    std::mt19937_64 rng(77);
    Points pts;
    for (int i = 0; i < 30; ++i) {
        pts.push_back({oracles::uniform(rng, -3, 3), oracles::uniform(rng, -3, 3)});
    }
    auto res = kmeans(pts, cfg_k(4));
    CHECK(res.sse == doctest::Approx(recompute_sse(pts, res)).epsilon(1e-9));
}

TEST_CASE("sse_curve is non-increasing and optimal at toy scale") {
    std::mt19937_64 rng(88);
    for (int trial = 0; trial < 20; ++trial) {
        Points pts;
        const int n = 5 + static_cast<int>(oracles::uniform(rng, 0, 3));  // 5..8
        for (int i = 0; i < n; ++i) {
            pts.push_back({oracles::uniform(rng, -2, 2), oracles::uniform(rng, -2, 2)});
        }
        auto curve = sse_curve(pts, 3, cfg_k(0, 42 + trial, 20));
        REQUIRE(curve.size() == 3);
        for (std::size_t i = 1; i < curve.size(); ++i) {
            CHECK(curve[i].second <= curve[i - 1].second + 1e-12);
        }
        for (const auto& [k, sse] : curve) {
            CHECK(sse == doctest::Approx(oracles::optimal_kmeans_sse(pts, k))
                             .epsilon(1e-9));
        }
    }
}

TEST_CASE("four equally spaced collinear points reach zero SSE at k=4") {
    Points pts{{0}, {1}, {2}, {3}};
    auto curve = sse_curve(pts, 4, cfg_k(0));
    CHECK(curve[3].second == doctest::Approx(0.0));
}

TEST_CASE("elbow on a curve with one sharp bend") {
    std::vector<std::pair<std::size_t, double>> curve{
        {1, 100}, {2, 40}, {3, 12}, {4, 10}, {5, 9}};
    // drops 60, 28, 2, 1: the descent collapses after k=3
    CHECK(choose_k_elbow(curve) == 3);
}

TEST_CASE("elbow on a strictly linear curve ties to the smallest k") {
    std::vector<std::pair<std::size_t, double>> curve{
        {1, 50}, {2, 40}, {3, 30}, {4, 20}, {5, 10}};
    CHECK(choose_k_elbow(curve) == 2);
}

TEST_CASE("elbow input validation") {
    CHECK_THROWS_AS(choose_k_elbow({{1, 5.0}, {2, 3.0}}), Error);
    CHECK_THROWS_AS(choose_k_elbow({{1, 5.0}, {3, 3.0}, {4, 2.0}}), Error);
}

TEST_CASE("second filter recommends a neighbor coincident with the target") {
    SimilarityProfile profile;
    profile.target = "t";
    profile.entries = {{"twin", 1.0, 1.0, false},
                       {"far1", -0.8, -0.7, false},
                       {"far2", -0.75, -0.8, false},
                       {"off", 0.1, -0.9, false}};
    auto res = second_filter(profile, cfg_k(0));
    CHECK(res.recommended.count("twin") == 1);
    CHECK(res.recommended.count("far1") == 0);
}

TEST_CASE("second filter recommendation is stable under entry permutation") {
    SimilarityProfile p1;
    p1.target = "t";
    p1.entries = {{"a", 0.95, 0.9, false}, {"b", 0.2, 0.1, false},
                  {"c", 0.9, 0.95, false}, {"d", -0.5, 0.2, false},
                  {"e", 0.15, 0.22, false}};
    SimilarityProfile p2 = p1;
    std::reverse(p2.entries.begin(), p2.entries.end());
    auto r1 = second_filter(p1, cfg_k(0));
    auto r2 = second_filter(p2, cfg_k(0));
    CHECK(r1.recommended == r2.recommended);
}

TEST_CASE("second filter needs at least 3 entries") {
    SimilarityProfile profile;
    profile.target = "t";
    profile.entries = {{"a", 0.5, 0.5, false}, {"b", 0.4, 0.4, false}};
    CHECK_THROWS_AS(second_filter(profile, cfg_k(0)), Error);
}

TEST_CASE("baseline kmeans recommends the target's cluster mates") {
    NormalizedDataset nd;
    // two plain groups; t sits in the first
    auto add = [&](const char* name, double base) {
        NormalizedRecord r;
        r.region = name;
        for (auto& v : r.values) v = base;
        nd.records.push_back(r);
    };
    add("t", 0.1);
    add("a", 0.12);
    add("b", 0.11);
    add("x", 0.9);
    add("y", 0.92);
    auto res = baseline_kmeans(nd, "t", 2, cfg_k(2));
    CHECK(res.recommended == std::set<std::string>{"a", "b"});
    CHECK_THROWS_AS(baseline_kmeans(nd, "nope", 2, cfg_k(2)), Error);
}
