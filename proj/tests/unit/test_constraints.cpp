#include <doctest.h>

#include "satr/constraints.hpp"

using namespace satr;

namespace {

constexpr Color R = Color::Red;
constexpr Color B = Color::Blue;
constexpr Color P = Color::Purple;

std::vector<Color> full_colors(CKind base) {
    if (base == CKind::K2) return {R, R, B, B};
    return {R, R, B, B, P, P};
}

std::vector<Color> colour_seq(const CircularOrder& o, const std::vector<Color>& col) {
    std::vector<Color> s;
    for (int x : o) s.push_back(col[x]);
    return s;
}

std::vector<int> iota_labels(size_t n) {
    std::vector<int> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
    return v;
}

}  // namespace

TEST_CASE("every raw derived constraint normalizes to its brute-force semantics") {
    int rows = 0;
    for (CKind base : {CKind::K3, CKind::P3, CKind::K2}) {
        std::vector<Color> palette = base == CKind::K2 ? std::vector<Color>{R, B} : std::vector<Color>{R, B, P};
        std::vector<RawConstraint> raws;
        for (Color c : palette) raws.push_back({base, {c}, false});
        for (Color c : palette)
            for (Color d : palette)
                if (c <= d)
                    for (bool t : {false, true}) raws.push_back({base, {c, d}, t});
        for (auto& raw : raws) {
            std::vector<Color> rest = full_colors(base);
            for (Color c : raw.removed) rest.erase(std::find(rest.begin(), rest.end(), c));
            Normalized n = normalize(raw, rest);
            for (auto& o : all_circular_orders(iota_labels(rest.size()))) {
                auto seq = colour_seq(o, rest);
                bool want = raw_satisfied(raw, seq);
                bool got = n.status == Normalized::Status::Always ||
                           (n.status == Normalized::Status::Constraint && satisfies(n.kind, colour_seq(o, n.roles)));
                CHECK(want == got);
            }
            ++rows;
        }
    }
    CHECK(rows == 3 + 12 + 3 + 12 + 2 + 6);
}

TEST_CASE("canonical kinds mean what their raw form means") {
    for (CKind k : {CKind::K3, CKind::P3, CKind::K2, CKind::K3minusR, CKind::P3minusP, CKind::P3minusPP,
                    CKind::K3minusRB}) {
        auto sig = signature(k);
        std::vector<Color> col;
        for (int i = 0; i < 3; ++i) col.insert(col.end(), sig[i], static_cast<Color>(i));
        for (auto& o : all_circular_orders(iota_labels(col.size()))) {
            auto seq = colour_seq(o, col);
            CHECK(satisfies(k, seq) == raw_satisfied(as_raw(k), seq));
        }
    }
}

TEST_CASE("catalogue rows agree with the canonical predicates except the one-purple row") {
    for (CKind k : {CKind::K3, CKind::P3, CKind::K2, CKind::K3minusR, CKind::P3minusP, CKind::P3minusPP,
                    CKind::K3minusRB}) {
        auto sig = signature(k);
        std::vector<Color> col;
        for (int i = 0; i < 3; ++i) col.insert(col.end(), sig[i], static_cast<Color>(i));
        int weaker = 0;
        for (auto& o : all_circular_orders(iota_labels(col.size()))) {
            auto seq = colour_seq(o, col);
            bool a = satisfies(k, seq), b = row_predicate(k, seq);
            CHECK((!a || b));
            if (b && !a) ++weaker;
        }
        if (k == CKind::P3minusP)
            CHECK(weaker > 0);
        else
            CHECK(weaker == 0);
    }
}

TEST_CASE("named equivalences") {
    auto k2 = [](const RawConstraint& r, std::vector<Color> rest) {
        auto n = normalize(r, rest);
        return n.status == Normalized::Status::Constraint && n.kind == CKind::K2;
    };
    CHECK(k2({CKind::K3, {R, R}, false}, {B, B, P, P}));
    CHECK(k2({CKind::P3, {R, P}, true}, {R, B, B, P}));
    CHECK(normalize({CKind::K3, {R, B}, false}, {R, B, P, P}).status == Normalized::Status::Always);
    CHECK(normalize({CKind::P3, {R, B}, false}, {R, B, P, P}).status == Normalized::Status::Always);
    CHECK(normalize({CKind::P3, {R, P}, false}, {R, B, B, P}).status == Normalized::Status::Always);
    CHECK(normalize({CKind::K2, {R}, false}, {R, B, B}).status == Normalized::Status::Always);
    CHECK(normalize({CKind::K3, {B, B}, true}, {R, R, P, P}).status == Normalized::Status::Never);
}

namespace {

struct CannedCase {
    Pattern p;
    CKind source;
    std::vector<std::pair<int, int>> pairs;  // role indices that must be consecutive
};

}  // namespace

TEST_CASE("canned trees equal their constraint-filtered order sets") {
    std::vector<CannedCase> cases = {
        {Pattern::Deg4K2, CKind::K2, {}},
        {Pattern::Deg4P3minusPP, CKind::P3minusPP, {}},
        {Pattern::Deg4K3minusRB, CKind::K3minusRB, {}},
        {Pattern::Consec6K3, CKind::K3, {{0, 1}}},
        {Pattern::Consec6P3RB, CKind::P3, {{0, 1}}},
        {Pattern::Consec6P3PR, CKind::P3, {{0, 1}}},
        {Pattern::Consec5PSame, CKind::P3minusP, {{0, 1}}},
        {Pattern::Consec5PRB, CKind::P3minusP, {{0, 1}}},
        {Pattern::Consec5PPR, CKind::P3minusP, {{0, 1}}},
        {Pattern::Consec5RPair, CKind::K3minusR, {{0, 1}}},
        {Pattern::Consec5RTwo, CKind::K3minusR, {{0, 1}, {2, 3}}},
    };
    for (auto& cc : cases) {
        auto roles = pattern_roles(cc.p);
        auto labels = iota_labels(roles.size());
        auto tree = canned_tree(cc.p, labels, roles);
        tree.check();
        std::set<CircularOrder> want;
        for (auto& o : all_circular_orders(labels)) {
            bool ok = satisfies(cc.source, colour_seq(o, roles));
            for (auto [a, b] : cc.pairs) ok = ok && consecutive_in(o, {a, b});
            if (ok) want.insert(o);
        }
        INFO(pattern_name(cc.p), " ", tree.to_string());
        CHECK(enumerate_orders(tree) == want);
        CHECK(!want.empty());
    }
    // the alternation tree used when a piece is cut off
    auto roles = pattern_roles(Pattern::Alternation4);
    auto t = canned_tree(Pattern::Alternation4, {0, 1, 2, 3}, roles);
    std::set<CircularOrder> want;
    for (auto& o : all_circular_orders({0, 1, 2, 3}))
        if (alternate(colour_seq(o, roles), B, P)) want.insert(o);
    CHECK(enumerate_orders(t) == want);
    CHECK_THROWS_AS(canned_tree(Pattern::Deg4K2, {0, 1, 2, 3}, {R, R, B, B}), SignatureMismatch);
}

TEST_CASE("pair replacement brackets the filtered set") {
    for (CKind k : {CKind::K3, CKind::P3, CKind::K3minusR, CKind::P3minusP}) {
        auto sig = signature(k);
        AlternationConstraint c;
        c.kind = k;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < sig[i]; ++j) {
                c.darts.push_back(static_cast<int>(c.darts.size()) + 10);
                c.colors.push_back(static_cast<Color>(i));
            }
        auto all = satisfying_orders(c);
        std::vector<std::pair<int, int>> single;
        for (size_t a = 0; a < c.darts.size(); ++a)
            for (size_t b = a + 1; b < c.darts.size(); ++b) single.emplace_back(c.darts[a], c.darts[b]);
        std::vector<std::vector<std::pair<int, int>>> families;
        for (auto& p : single) families.push_back({p});
        for (size_t i = 0; i < single.size(); ++i)
            for (size_t j = i + 1; j < single.size(); ++j) families.push_back({single[i], single[j]});
        for (auto& fam : families) {
            std::set<CircularOrder> filtered;
            for (auto& o : all) {
                bool ok = true;
                for (auto [x, y] : fam) ok = ok && consecutive_in(o, {x, y});
                if (ok) filtered.insert(o);
            }
            auto r = replace_with_pairs(c, fam);
            if (r.status == PairReplacement::Status::No) {
                CHECK(filtered.empty());
                continue;
            }
            if (r.status == PairReplacement::Status::NotApplicable) {
                CHECK(k == CKind::K3minusR);
                continue;
            }
            auto got = enumerate_orders(r.tree);
            for (auto& o : filtered) CHECK(got.count(o) == 1);
            for (auto& o : got) CHECK(all.count(o) == 1);
        }
    }
}
