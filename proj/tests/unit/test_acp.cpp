#include <doctest.h>

#include <algorithm>
#include <functional>
#include <regex>
#include <set>

#include "satr/acp.hpp"
#include "satr/constraints.hpp"
#include "satr/planted.hpp"

using namespace satr;

namespace {

CircularOrder rotate_to_min(std::vector<int> o) {
    std::rotate(o.begin(), std::min_element(o.begin(), o.end()), o.end());
    return o;
}

std::vector<int> restrict_to(const CircularOrder& o, const std::vector<int>& keep) {
    std::vector<int> out;
    for (int x : o)
        if (std::find(keep.begin(), keep.end(), x) != keep.end()) out.push_back(x);
    return out;
}

// no x1 y1 x2 y2 pattern with x's from one group and y's from another
bool laminar(const CircularOrder& o, const std::vector<std::vector<int>>& groups) {
    std::vector<int> owner(o.size());
    for (size_t g = 0; g < groups.size(); ++g)
        for (int x : groups[g]) owner[x] = static_cast<int>(g);
    const size_t n = o.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c)
                for (size_t d = c + 1; d < n; ++d) {
                    int x = owner[o[a]], y = owner[o[b]];
                    if (x != y && owner[o[c]] == x && owner[o[d]] == y) return false;
                }
    return true;
}

// every way to split 0..n-1 into at least two nonempty groups
std::vector<std::vector<std::vector<int>>> partitions(int n) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            if (cur.size() >= 2) out.push_back(cur);
            return;
        }
        for (size_t g = 0; g < cur.size(); ++g) {
            cur[g].push_back(i);
            rec(i + 1);
            cur[g].pop_back();
        }
        cur.push_back({i});
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

AlternationConstraint base_constraint(CKind k) {
    AlternationConstraint c;
    c.kind = k;
    auto sig = signature(k);
    for (int col = 0; col < 3; ++col)
        for (int j = 0; j < sig[col]; ++j) {
            c.darts.push_back(static_cast<int>(c.darts.size()));
            c.colors.push_back(static_cast<Color>(col));
        }
    return c;
}

}  // namespace

TEST_CASE("split_cut_vertex matches brute force over block partitions") {
    int cases = 0, infeasible = 0;
    for (CKind k : {CKind::K2, CKind::P3, CKind::K3}) {
        AlternationConstraint c = base_constraint(k);
        const int n = static_cast<int>(c.darts.size());
        auto all = satisfying_orders(c);
        for (auto& groups : partitions(n)) {
            // blocks at a cut vertex may nest but never interleave
            std::set<CircularOrder> feasible;
            for (auto& o : all)
                if (laminar(o, groups)) feasible.insert(o);
            CutDecision d = split_cut_vertex(c, groups);
            std::string shape;
            for (auto& g : groups) {
                shape += "(";
                for (int x : g) shape += std::to_string(x);
                shape += ")";
            }
            INFO(std::string(ckind_name(k)), " ", shape);
            ++cases;
            CHECK(d.feasible == !feasible.empty());
            if (!d.feasible) {
                ++infeasible;
                continue;
            }
            REQUIRE(d.copies.size() == groups.size());
            for (size_t i = 0; i < groups.size(); ++i) {
                std::set<CircularOrder> want, got;
                for (auto& o : feasible) want.insert(rotate_to_min(restrict_to(o, groups[i])));
                for (auto& o : all_circular_orders(groups[i]))
                    if (d.copies[i].holds(o)) got.insert(rotate_to_min(o));
                CHECK(got == want);
            }
        }
    }
    MESSAGE(cases << " partitions, " << infeasible << " infeasible");
    CHECK(infeasible > 0);
}

TEST_CASE("solve: planted instances with valid certificates and trace lines") {
    const std::regex line(R"(LEMMA \S+ vertex=\S+ action=\S.*)");
    int traced = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        PlantedOptions o;
        o.n = 50 + 20 * static_cast<int>(seed);
        o.pattern_rate = 0.5;
        o.weights[0] = static_cast<int>(seed % 3);
        Planted p = planted_instance(o, seed);
        INFO("seed " << seed);
        Trace tr;
        Verdict v = solve(p.a, &tr);
        REQUIRE(v.yes);
        REQUIRE(v.witness);
        CHECK(check_certificate(p.a, *v.witness));
        CHECK(check_certificate(p.a, p.witness));
        for (auto& l : tr) CHECK(std::regex_match(l, line));
        traced += static_cast<int>(tr.size());
    }
    CHECK(traced > 0);
}
