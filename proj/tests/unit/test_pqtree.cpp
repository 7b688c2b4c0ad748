#include <doctest.h>

#include <random>

#include "satr/pqtree.hpp"

using namespace satr;

namespace {

std::set<CircularOrder> brute(const std::vector<int>& ls, const std::vector<std::set<int>>& subsets) {
    std::set<CircularOrder> out;
    for (auto& o : all_circular_orders(ls)) {
        bool ok = true;
        for (auto& s : subsets) ok = ok && consecutive_in(o, s);
        if (ok) out.insert(o);
    }
    return out;
}

}  // namespace

TEST_CASE("universal tree lists every circular order") {
    for (int n = 1; n <= 6; ++n) {
        std::vector<int> ls;
        for (int i = 1; i <= n; ++i) ls.push_back(i);
        auto t = universal(ls);
        auto got = enumerate_orders(t);
        size_t want = 1;
        for (int i = 2; i < n; ++i) want *= i;
        CHECK(got.size() == want);
    }
}

TEST_CASE("parse and print round trip") {
    for (std::string s : {"Q[1 2 3 4]", "P(1 2 P(3 4) 5)", "Q[1 Q#1[2 3] 4 Q#1[5 6]]", "P(1 2)", "7"}) {
        auto t = PQTree::parse(s);
        CHECK(PQTree::parse(t.to_string()).to_string() == t.to_string());
    }
    CHECK(PQTree::parse("Q[1 2 3 4]").to_string() == "Q[1 2 3 4]");
}

TEST_CASE("example orders: a fixed cycle, one pair, a synchronized pair") {
    CHECK(enumerate_orders(PQTree::parse("Q[1 2 3 4]")) == std::set<CircularOrder>{{1, 2, 3, 4}, {1, 4, 3, 2}});
    auto b = apply_consecutivity(universal({1, 2, 3, 4, 5}), {1, 2});
    REQUIRE(b);
    CHECK(enumerate_orders(*b) == brute({1, 2, 3, 4, 5}, {{1, 2}}));
    CHECK(enumerate_orders(*b).size() == 12);
    auto c = enumerate_orders(PQTree::parse("Q[Q#1[6 1] 2 Q#1[3 4] 5]"));
    CHECK(c == std::set<CircularOrder>{{1, 2, 3, 4, 5, 6}, {1, 5, 3, 4, 2, 6}, {1, 6, 2, 4, 3, 5}, {1, 6, 5, 4, 3, 2}});
}

TEST_CASE("consecutivity matches brute force on random subset families") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 3 + static_cast<int>(rng() % 5);
        std::vector<int> ls;
        for (int i = 0; i < n; ++i) ls.push_back(i);
        std::vector<std::set<int>> fam;
        std::optional<PQTree> t = universal(ls);
        int k = 1 + static_cast<int>(rng() % 4);
        for (int j = 0; j < k && t; ++j) {
            std::set<int> s;
            for (int x : ls)
                if (rng() % 2) s.insert(x);
            fam.push_back(s);
            t = apply_consecutivity(*t, s);
            if (t) t->check();
        }
        auto want = brute(ls, fam);
        if (!t) {
            CHECK(want.empty());
            continue;
        }
        auto got = enumerate_orders(*t);
        CHECK(got == want);
        for (auto& o : all_circular_orders(ls)) CHECK(is_compatible(*t, o) == (want.count(o) > 0));
        // restriction agrees with projection
        std::set<int> keep;
        for (int x : ls)
            if (rng() % 3) keep.insert(x);
        std::set<CircularOrder> proj;
        for (auto& o : got) proj.insert(project_order(o, keep));
        auto r = restrict_tree(*t, keep);
        r.check();
        INFO(t->to_string(), " -> ", r.to_string());
        CHECK(enumerate_orders(r) == proj);
    }
}

TEST_CASE("synchronized trees enumerate jointly and check") {
    auto t = PQTree::parse("P(Q#1[1 2] 3 Q#1[4 5])");
    auto orders = enumerate_orders(t);
    for (auto& o : all_circular_orders({1, 2, 3, 4, 5})) CHECK(is_compatible(t, o) == (orders.count(o) > 0));
    CHECK(orders.size() == 4);
}

TEST_CASE("cap is enforced") {
    std::vector<int> ls;
    for (int i = 0; i < 12; ++i) ls.push_back(i);
    CHECK_THROWS_AS(enumerate_orders(universal(ls), 1000), CapExceeded);
}
