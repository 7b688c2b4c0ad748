#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "satr/acp.hpp"
#include "satr/oracle.hpp"

using namespace satr;
using testutil::make_at;

namespace {

const std::vector<std::array<int, 2>> kK4{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// random host with crossings drawn among non-adjacent pairs, components of at most three edges
ATGraph random_small(std::mt19937& rng, int n, int m, int crossings) {
    std::vector<std::array<int, 2>> edges;
    std::set<std::pair<int, int>> have;
    for (int guard = 0; static_cast<int>(edges.size()) < m && guard < 1000; ++guard) {
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
    std::vector<std::pair<int, int>> chosen;
    for (auto p : cand) {
        if (static_cast<int>(chosen.size()) >= crossings) break;
        chosen.push_back(p);
        if (lambda(make_at(n, edges, chosen)) > 3) chosen.pop_back();
    }
    return make_at(n, edges, chosen);
}

void agree(const ATGraph& a) {
    Verdict want = brute_force_satr(a);
    Verdict got = solve(a);
    CHECK(got.yes == want.yes);
    if (got.yes) {
        REQUIRE(got.witness);
        CHECK(check_certificate(a, *got.witness));
    }
}

}  // namespace

TEST_CASE("solve: small examples") {
    SUBCASE("K4 with one crossing pair") {
        ATGraph a = make_at(4, kK4, {{0, 5}});
        Verdict v = solve(a);
        REQUIRE(v.yes);
        CHECK(check_certificate(a, *v.witness));
    }
    SUBCASE("K4 with two crossing pairs") {
        ATGraph a = make_at(4, kK4, {{0, 5}, {1, 4}});
        CHECK_FALSE(solve(a).yes);
    }
    SUBCASE("C4 with opposite edges crossing") {
        ATGraph a = make_at(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 2}});
        Verdict v = solve(a);
        REQUIRE(v.yes);
        CHECK(check_certificate(a, *v.witness));
    }
    SUBCASE("three pairwise crossing edges") {
        ATGraph a = make_at(6, {{0, 1}, {2, 3}, {4, 5}}, {{0, 1}, {0, 2}, {1, 2}});
        Verdict v = solve(a);
        REQUIRE(v.yes);
        CHECK(v.witness->dummies.size() == 3);
        CHECK(check_certificate(a, *v.witness));
    }
    SUBCASE("path of crossings with a shared end") {
        // red 0-1 and blue 0-2 both cross purple 3-4
        ATGraph a = make_at(5, {{0, 1}, {0, 2}, {3, 4}}, {{0, 2}, {1, 2}});
        agree(a);
    }
    SUBCASE("adjacent crossing pair") {
        ATGraph a = make_at(3, {{0, 1}, {1, 2}}, {{0, 1}});
        Verdict v = solve(a);
        CHECK_FALSE(v.yes);
        CHECK(v.reason == Reason::AdjacentCrossingPair);
    }
    SUBCASE("too large a component") {
        ATGraph a = make_at(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}, {{0, 1}, {1, 2}, {2, 3}});
        CHECK_THROWS_AS(solve(a), ComponentTooLarge);
    }
}

TEST_CASE("solve: agrees with the oracle on random small instances") {
    std::mt19937 rng(77);
    int yes = 0, no = 0;
    for (int iter = 0; iter < 400; ++iter) {
        int n = 4 + static_cast<int>(rng() % 4);
        int m = n - 1 + static_cast<int>(rng() % 5);
        ATGraph a = random_small(rng, n, m, 1 + static_cast<int>(rng() % 4));
        INFO("iter " << iter);
        Verdict want = brute_force_satr(a);
        Verdict got = solve(a);
        CHECK(got.yes == want.yes);
        if (got.yes) CHECK(check_certificate(a, *got.witness));
        (want.yes ? yes : no)++;
    }
    MESSAGE("yes " << yes << " no " << no);
    CHECK(yes > 50);
    CHECK(no > 20);
}

TEST_CASE("untangle: committed table matches the oracle and the constraints") {
    CHECK(untangle_table_text() == generate_untangle_table());
    for (ComponentKind kind : {ComponentKind::K2, ComponentKind::P3, ComponentKind::K3}) {
        const int k = kind == ComponentKind::K2 ? 2 : 3;
        AlternationConstraint c;
        c.kind = kind == ComponentKind::K2 ? CKind::K2 : kind == ComponentKind::P3 ? CKind::P3 : CKind::K3;
        const Color cols[3] = {Color::Red, Color::Blue, Color::Purple};
        std::vector<int> codes;
        for (int p = 0; p < 2 * k; ++p) {
            c.darts.push_back(p);
            c.colors.push_back(cols[p / 2]);
            codes.push_back(p);
        }
        int valid = 0;
        for (auto& o : all_circular_orders(codes)) {
            bool want = c.holds(o);
            CHECK(untangle(kind, o).has_value() == want);
            valid += want;
        }
        CHECK(valid == (k == 2 ? 2 : 8));
    }
}
