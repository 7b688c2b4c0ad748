#include <doctest.h>

#include <chrono>
#include <random>
#include <set>

#include "helpers.hpp"
#include "satr/embedding.hpp"
#include "satr/oracle.hpp"

using namespace satr;
using testutil::make_at;

namespace {

// random graph with random non-adjacent crossing pairs
ATGraph random_at(std::mt19937& rng, int n, int m, int crossings) {
    std::vector<std::array<int, 2>> edges;
    std::set<std::pair<int, int>> have;
    int guard = 0;
    while (static_cast<int>(edges.size()) < m && guard++ < 1000) {
        int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
        if (u == v || have.count(std::minmax(u, v))) continue;
        have.insert(std::minmax(u, v));
        edges.push_back({u, v});
    }
    std::vector<std::pair<int, int>> cand;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        for (int f = e + 1; f < static_cast<int>(edges.size()); ++f) {
            auto [a, b] = edges[e];
            auto [c, d] = edges[f];
            if (a != c && a != d && b != c && b != d) cand.push_back({e, f});
        }
    std::shuffle(cand.begin(), cand.end(), rng);
    if (static_cast<int>(cand.size()) > crossings) cand.resize(crossings);
    return make_at(n, edges, cand);
}

}  // namespace

TEST_CASE("oracle: no crossings means planarity") {
    auto atlas = testutil::load_atlas(std::string(SATR_DATA_DIR) + "/connected_graphs_7.txt");
    REQUIRE(atlas.size() == 996);
    int planar = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (auto& g : atlas) {
        ATGraph a = make_at(g.n, g.edges);
        bool want = is_planar(a.graph);
        Verdict v = brute_force_satr(a);
        INFO("n=" << g.n << " m=" << g.edges.size());
        CHECK(v.yes == want);
        if (v.yes) {
            ++planar;
            REQUIRE(v.witness);
            CHECK(check_certificate(a, *v.witness));
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("atlas oracle pass: " << secs << " s");
    // planar connected graphs on 1..7 vertices: 1+1+2+6+20+99+646
    CHECK(planar == 775);
}

TEST_CASE("oracle: small examples") {
    SUBCASE("three independent edges crossing pairwise") {
        ATGraph a = make_at(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 1}, {0, 2}, {1, 2}});
        Verdict v = brute_force_satr(a);
        REQUIRE(v.yes);
        CHECK(check_certificate(a, *v.witness));
    }
    SUBCASE("K4 with two independent pairs crossing") {
        // edges 0:01 1:02 2:03 3:12 4:13 5:23
        ATGraph a = make_at(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {{0, 5}, {1, 4}});
        CHECK_FALSE(brute_force_satr(a).yes);
        CHECK(enumerate_realizations(a).empty());
        ATGraph b = make_at(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {{0, 5}});
        CHECK(brute_force_satr(b).yes);
    }
    SUBCASE("single crossing pair") {
        ATGraph a = make_at(4, {{0, 1}, {2, 3}}, {{0, 1}});
        auto all = enumerate_realizations(a);
        CHECK(!all.empty());
        for (auto& w : all) CHECK(check_certificate(a, w));
        // one dummy with two alternating rotations, leaves trivial
        CHECK(all.size() == 2);
    }
    SUBCASE("adjacent pair") {
        ATGraph a = make_at(3, {{0, 1}, {1, 2}}, {{0, 1}});
        CHECK(enumerate_realizations(a).empty());
        Verdict v = brute_force_satr(a);
        CHECK_FALSE(v.yes);
        CHECK(v.reason == Reason::AdjacentCrossingPair);
    }
    SUBCASE("P3 pattern routes both dummies on the purple edge") {
        // purple edge 0 crosses red 1 and blue 2
        ATGraph a = make_at(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 1}, {0, 2}});
        auto all = enumerate_realizations(a);
        REQUIRE(!all.empty());
        for (auto& w : all) {
            CHECK(check_certificate(a, w));
            CHECK(w.routes[0].size() == 2);
            CHECK(w.routes[1].size() == 1);
            CHECK(w.routes[2].size() == 1);
        }
    }
    SUBCASE("limits") {
        ATGraph a = make_at(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 1}, {0, 2}, {1, 2}});
        OracleLimits lim;
        lim.max_nodes = 8;
        CHECK_THROWS_AS(brute_force_satr(a, lim), LimitExceeded);
        lim = {};
        lim.max_darts = 10;
        CHECK_THROWS_AS(brute_force_satr(a, lim), LimitExceeded);
        lim = {};
        lim.max_rotations = 1;
        CHECK_THROWS_AS(brute_force_satr(a, lim), LimitExceeded);
    }
    SUBCASE("pinned rotation") {
        // star with four leaves; pinning fixes the rotation in every certificate
        ATGraph a = make_at(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
        OracleOptions opt;
        opt.pinned[0] = {2, 0, 3, 1};
        auto all = enumerate_realizations(a, opt);
        REQUIRE(all.size() == 1);
        std::vector<int> got;
        for (auto& d : all[0].rotations[0]) got.push_back(d.edge);
        CHECK(got == std::vector<int>{0, 3, 1, 2});
    }
}

TEST_CASE("oracle: symmetry reduction matches the full enumeration") {
    std::mt19937 rng(5);
    int yes = 0, no = 0;
    for (int iter = 0; iter < 250; ++iter) {
        int n = 4 + static_cast<int>(rng() % 3);
        int m = n - 1 + static_cast<int>(rng() % 4);
        ATGraph a = random_at(rng, n, m, static_cast<int>(rng() % 4));
        OracleOptions full;
        full.symmetry = false;
        OracleOptions red;
        auto all_full = enumerate_realizations(a, full);
        auto all_red = enumerate_realizations(a, red);
        CHECK(all_full.size() == all_red.size());
        std::set<std::vector<std::vector<CertDart>>> f, r;
        for (auto& w : all_full) {
            CHECK(check_certificate(a, w));
            f.insert(w.rotations);
        }
        for (auto& w : all_red) r.insert(w.rotations);
        CHECK(f == r);
        Verdict vf = brute_force_satr(a, full), vr = brute_force_satr(a, red);
        CHECK(vf.yes == vr.yes);
        CHECK(vf.yes == !all_full.empty());
        (vf.yes ? yes : no)++;
    }
    CHECK(yes > 20);
    CHECK(no > 20);
}

TEST_CASE("oracle: the wheel filter never changes the answer") {
    std::mt19937 rng(21);
    int yes = 0;
    for (int iter = 0; iter < 300; ++iter) {
        int n = 5 + static_cast<int>(rng() % 2);
        ATGraph a = random_at(rng, n, n + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 5));
        OracleOptions plain;
        plain.planarity_filter = false;
        bool want = brute_force_satr(a, plain).yes;
        CHECK(brute_force_satr(a, OracleOptions{}).yes == want);
        yes += want;
    }
    CHECK(yes > 30);
    CHECK(yes < 270);
}

TEST_CASE("oracle: certificates check out for larger local crossing number") {
    std::mt19937 rng(9);
    int checked = 0;
    for (int iter = 0; iter < 60; ++iter) {
        ATGraph a = random_at(rng, 8, 9, 8);
        Verdict v = brute_force_satr(a);
        if (!v.yes) continue;
        ++checked;
        CHECK(check_certificate(a, *v.witness));
    }
    CHECK(checked > 5);
    // one edge crossed by five others
    std::vector<std::array<int, 2>> e{{0, 1}};
    std::vector<std::pair<int, int>> x;
    for (int i = 0; i < 5; ++i) {
        e.push_back({2 + 2 * i, 3 + 2 * i});
        x.push_back({0, i + 1});
    }
    ATGraph star = make_at(12, e, x);
    CHECK(lambda(star) == 6);
    Verdict v = brute_force_satr(star);
    REQUIRE(v.yes);
    CHECK(check_certificate(star, *v.witness));
}
