#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "satr/embedding.hpp"
#include "satr/spqr.hpp"

using namespace satr;
using Edges = std::vector<std::array<int, 2>>;

namespace {

int count_type(const SPQRTree& t, SPQRTree::Type ty) {
    int c = 0;
    for (int x : t.alive_nodes())
        if (t.nodes[x].type == ty) ++c;
    return c;
}

// cycle plus random ears, chords and the odd parallel edge
Edges random_biconnected(std::mt19937& rng, int n, int extra, bool parallels) {
    Edges e;
    int k = std::min(n, 3 + static_cast<int>(rng() % 3));
    for (int i = 0; i < k; ++i) e.push_back({i, (i + 1) % k});
    int next = k;
    while (next < n) {
        int len = 1 + static_cast<int>(rng() % 3);
        len = std::min(len, n - next);
        int a = static_cast<int>(rng() % next), b = static_cast<int>(rng() % next);
        if (a == b) b = (a + 1) % next;
        int prev = a;
        for (int i = 0; i < len; ++i) {
            e.push_back({prev, next});
            prev = next++;
        }
        e.push_back({prev, b});
    }
    std::set<std::pair<int, int>> have;
    for (auto& x : e) have.insert(std::minmax(x[0], x[1]));
    for (int i = 0; i < extra; ++i) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a == b) continue;
        if (!parallels && have.count(std::minmax(a, b))) continue;
        have.insert(std::minmax(a, b));
        e.push_back({a, b});
    }
    std::shuffle(e.begin(), e.end(), rng);
    for (auto& x : e)
        if (rng() % 2) std::swap(x[0], x[1]);
    return e;
}

// Merge every node into one and compare the surviving real edges.
void check_recomposition(SPQRTree t) {
    while (true) {
        auto alive = t.alive_nodes();
        if (alive.size() == 1) break;
        int x = alive[0];
        auto nb = t.neighbors(x);
        REQUIRE(!nb.empty());
        merge_nodes(t, x, nb[0]);
    }
    int x = t.alive_nodes()[0];
    std::multiset<std::pair<int, std::pair<int, int>>> got, want;
    for (auto& e : t.nodes[x].edges) {
        REQUIRE(!e.is_virtual());
        got.insert({e.real, std::minmax(e.u, e.v)});
    }
    for (int r = 0; r < static_cast<int>(t.real_ends.size()); ++r)
        want.insert({r, std::minmax(t.real_ends[r][0], t.real_ends[r][1])});
    CHECK(got == want);
}

// Random skeleton embeddings: permute P-nodes, mirror R-nodes at random.
std::vector<RotationSystem> random_embeddings(const SPQRTree& t, std::mt19937& rng) {
    auto emb = default_skeleton_embeddings(t);
    for (int x : t.alive_nodes()) {
        auto ty = t.nodes[x].type;
        if (ty == SPQRTree::Type::P) {
            auto& r0 = emb[x].rot[0];
            std::shuffle(r0.begin(), r0.end(), rng);
            emb[x].rot[1].clear();
            for (auto it = r0.rbegin(); it != r0.rend(); ++it) emb[x].rot[1].push_back(*it ^ 1);
        } else if (ty == SPQRTree::Type::R && rng() % 2) {
            mirror(emb[x]);
        }
    }
    return emb;
}

std::vector<int> canon_cycle(std::vector<int> c) {
    auto m = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), m, c.end());
    return c;
}

}  // namespace

TEST_CASE("spqr: basic shapes") {
    SUBCASE("cycle") {
        auto t = build_spqr(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
        t.check();
        CHECK(count_type(t, SPQRTree::Type::S) == 1);
        CHECK(count_type(t, SPQRTree::Type::P) == 0);
        CHECK(count_type(t, SPQRTree::Type::R) == 0);
        CHECK(count_type(t, SPQRTree::Type::Q) == 5);
    }
    SUBCASE("theta") {
        // poles 0 and 1; paths 0-2-1, 0-3-4-1, 0-5-1
        auto t = build_spqr(6, {{0, 2}, {2, 1}, {0, 3}, {3, 4}, {4, 1}, {0, 5}, {5, 1}});
        t.check();
        CHECK(count_type(t, SPQRTree::Type::P) == 1);
        CHECK(count_type(t, SPQRTree::Type::S) == 3);
        CHECK(count_type(t, SPQRTree::Type::R) == 0);
        int p = -1;
        for (int x : t.alive_nodes())
            if (t.nodes[x].type == SPQRTree::Type::P) p = x;
        CHECK(t.skeleton_vertices(p) == std::vector<int>{0, 1});
        CHECK(t.nodes[p].edges.size() == 3);
    }
    SUBCASE("K4") {
        auto t = build_spqr(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        t.check();
        CHECK(count_type(t, SPQRTree::Type::R) == 1);
        CHECK(t.alive_nodes().size() == 7);
    }
    SUBCASE("bond with a real edge") {
        auto t = build_spqr(3, {{0, 1}, {1, 2}, {2, 0}, {0, 1}});
        t.check();
        CHECK(count_type(t, SPQRTree::Type::P) == 1);
        CHECK(count_type(t, SPQRTree::Type::S) == 1);
    }
    SUBCASE("single edge and double edge") {
        auto t = build_spqr(2, {{0, 1}});
        t.check();
        CHECK(t.alive_nodes().size() == 1);
        auto t2 = build_spqr(2, {{0, 1}, {1, 0}, {0, 1}});
        t2.check();
        CHECK(count_type(t2, SPQRTree::Type::P) == 1);
    }
    SUBCASE("not biconnected") {
        CHECK_THROWS_AS(build_spqr(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}), NotBiconnected);
        CHECK_THROWS_AS(build_spqr(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}), NotBiconnected);
        CHECK_THROWS_AS(build_spqr(4, {{0, 1}, {1, 2}, {2, 0}}), NotBiconnected);
    }
}

TEST_CASE("spqr: distribution vectors") {
    // v=0 with edges split 3/1/1/1 across a P-node with poles 0 and 1
    Edges e;
    int next = 2;
    // three paths in one branch: 0-a-1, 0-b-1, 0-c-1 joined by a chord a-b to keep them together
    int a = next++, b = next++, c = next++;
    e.push_back({0, a});
    e.push_back({a, 1});
    e.push_back({0, b});
    e.push_back({b, 1});
    e.push_back({0, c});
    e.push_back({c, 1});
    e.push_back({a, b});
    e.push_back({b, c});
    for (int i = 0; i < 3; ++i) {
        int x = next++;
        e.push_back({0, x});
        e.push_back({x, 1});
    }
    auto t = build_spqr(next, e);
    t.check();
    int p = -1;
    for (int x : t.alive_nodes())
        if (t.nodes[x].type == SPQRTree::Type::P) p = x;
    REQUIRE(p >= 0);
    CHECK(distribution_vector(t, p, 0) == std::vector<int>{3, 1, 1, 1});
    CHECK_THROWS_AS(distribution_vector(t, p, a), VertexNotInSkeleton);

    // pole of a P-node with a real edge
    auto t2 = build_spqr(4, {{0, 1}, {0, 2}, {2, 1}, {0, 3}, {3, 1}, {2, 3}});
    t2.check();
    auto t3 = build_spqr(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {0, 3}, {1, 4}, {0, 1}});
    t3.check();
    for (int x : t3.alive_nodes()) {
        if (t3.nodes[x].type == SPQRTree::Type::Q) continue;
        for (int v : t3.skeleton_vertices(x)) {
            auto d = distribution_vector(t3, x, v);
            int deg = 0;
            for (auto& ed : t3.real_ends) deg += (ed[0] == v) + (ed[1] == v);
            CHECK(std::accumulate(d.begin(), d.end(), 0) == deg);
        }
    }
}

TEST_CASE("spqr: merge") {
    auto t = build_spqr(6, {{0, 2}, {2, 1}, {0, 3}, {3, 4}, {4, 1}, {0, 5}, {5, 1}});
    int p = -1;
    for (int x : t.alive_nodes())
        if (t.nodes[x].type == SPQRTree::Type::P) p = x;
    auto nb = t.neighbors(p);
    int s = nb[0];
    merge_nodes(t, s, p);
    CHECK(t.nodes[s].type == SPQRTree::Type::R);
    CHECK_THROWS_AS(merge_nodes(t, s, s), NotAdjacent);
    // Q into S makes the edge real
    auto c = build_spqr(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    int sn = -1;
    for (int x : c.alive_nodes())
        if (c.nodes[x].type == SPQRTree::Type::S) sn = x;
    int q = c.neighbors(sn)[0];
    merge_nodes(c, sn, q);
    CHECK(c.nodes[sn].type == SPQRTree::Type::S);
    int reals = 0;
    for (auto& e : c.nodes[sn].edges) reals += !e.is_virtual();
    CHECK(reals == 1);
    c.check();
    std::vector<int> qs;
    for (int x : c.alive_nodes())
        if (c.nodes[x].type == SPQRTree::Type::Q) qs.push_back(x);
    REQUIRE(qs.size() == 3);
    CHECK_THROWS_AS(merge_nodes(c, qs[0], qs[1]), NotAdjacent);
}

TEST_CASE("spqr: random graphs keep the invariants") {
    std::mt19937 rng(7);
    int built = 0;
    for (int iter = 0; iter < 1500; ++iter) {
        int n = 3 + static_cast<int>(rng() % 14);
        int extra = static_cast<int>(rng() % (n + 2));
        auto e = random_biconnected(rng, n, extra, iter % 3 == 0);
        REQUIRE(is_biconnected(n, e));
        auto t = build_spqr(n, e);
        INFO(t.dump());
        t.check();
        ++built;
        for (int x : t.alive_nodes()) {
            if (t.nodes[x].type == SPQRTree::Type::Q) continue;
            for (int v : t.skeleton_vertices(x)) {
                auto loads = t.edge_loads(x, v);
                for (auto& [ei, load] : loads) CHECK(static_cast<int>(t.edges_behind(x, ei, v).size()) == load);
            }
        }
        check_recomposition(t);
    }
    CHECK(built == 1500);
}

TEST_CASE("spqr: composed embeddings are planar and cover all embeddings") {
    std::mt19937 rng(11);
    int planar = 0, exhaustive = 0;
    for (int iter = 0; iter < 600 && planar < 250; ++iter) {
        int n = 3 + static_cast<int>(rng() % 9);
        auto e = random_biconnected(rng, n, static_cast<int>(rng() % 4), false);
        if (!embed_edges(n, e)) continue;
        ++planar;
        auto t = build_spqr(n, e);
        for (int k = 0; k < 5; ++k) {
            auto r = compose_embedding(t, random_embeddings(t, rng));
            REQUIRE(r.well_formed());
            CHECK(euler_check(r));
        }
        // exhaustive comparison on small instances
        std::vector<std::vector<int>> darts(n);
        for (int i = 0; i < static_cast<int>(e.size()); ++i) {
            darts[e[i][0]].push_back(2 * i);
            darts[e[i][1]].push_back(2 * i + 1);
        }
        double total = 1;
        for (auto& d : darts)
            for (size_t k = 2; k < d.size(); ++k) total *= static_cast<double>(k);
        if (total > 5000) continue;
        ++exhaustive;
        std::set<std::vector<std::vector<int>>> brute;
        RotationSystem rs;
        rs.n = n;
        rs.ends = e;
        rs.rot = darts;
        for (auto& d : rs.rot) std::sort(d.begin() + 1, d.end());
        std::function<void(int)> rec = [&](int v) {
            if (v == n) {
                if (euler_check(rs)) {
                    std::vector<std::vector<int>> key;
                    for (auto& d : rs.rot) key.push_back(canon_cycle(d));
                    brute.insert(key);
                }
                return;
            }
            auto& d = rs.rot[v];
            do {
                rec(v + 1);
            } while (std::next_permutation(d.begin() + 1, d.end()));
        };
        rec(0);
        std::set<std::vector<std::vector<int>>> composed;
        for (int k = 0; k < 400; ++k) {
            auto r = compose_embedding(t, random_embeddings(t, rng));
            std::vector<std::vector<int>> key;
            for (auto& d : r.rot) key.push_back(canon_cycle(d));
            composed.insert(key);
        }
        for (auto& k : composed) CHECK(brute.count(k) == 1);
        if (brute.size() <= 40) CHECK(composed.size() == brute.size());
    }
    CHECK(planar >= 100);
    CHECK(exhaustive >= 30);
}

TEST_CASE("spqr: large inputs build") {
    std::mt19937 rng(3);
    int n = 200000;
    auto e = random_biconnected(rng, n, n / 2, false);
    auto t = build_spqr(n, e);
    CHECK(t.alive_nodes().size() > 1);
    // a long cycle is a single S-node
    Edges c;
    for (int i = 0; i < n; ++i) c.push_back({i, (i + 1) % n});
    auto tc = build_spqr(n, c);
    CHECK(count_type(tc, SPQRTree::Type::S) == 1);
}
