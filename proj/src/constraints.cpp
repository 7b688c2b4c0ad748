#include "satr/constraints.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace satr {

namespace {

constexpr Color R = Color::Red;
constexpr Color B = Color::Blue;
constexpr Color P = Color::Purple;

std::vector<int> positions(const std::vector<Color>& cyc, Color c) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(cyc.size()); ++i)
        if (cyc[i] == c) out.push_back(i);
    return out;
}

bool same_neighbours(const std::vector<Color>& cyc, Color c) {
    auto pos = positions(cyc, c);
    if (pos.size() != 1) return false;
    int n = static_cast<int>(cyc.size());
    return cyc[(pos[0] + 1) % n] == cyc[(pos[0] + n - 1) % n];
}

bool adjacent_pair(const std::vector<Color>& cyc, Color c, Color d) {
    int n = static_cast<int>(cyc.size());
    for (int i = 0; i < n; ++i) {
        Color a = cyc[i], b = cyc[(i + 1) % n];
        if ((a == c && b == d) || (a == d && b == c)) return true;
    }
    return false;
}

void insert_all(const std::vector<Color>& seq, const std::vector<Color>& extra, bool together,
                std::vector<std::vector<Color>>& out) {
    if (extra.empty()) {
        out.push_back(seq);
        return;
    }
    const size_t n = seq.size();
    if (together) {
        std::vector<Color> run = extra;
        for (int flip = 0; flip < 2; ++flip) {
            for (size_t g = 0; g <= n; ++g) {
                std::vector<Color> s(seq.begin(), seq.begin() + g);
                s.insert(s.end(), run.begin(), run.end());
                s.insert(s.end(), seq.begin() + g, seq.end());
                out.push_back(s);
            }
            std::reverse(run.begin(), run.end());
        }
        return;
    }
    std::vector<Color> rest(extra.begin() + 1, extra.end());
    for (size_t g = 0; g <= n; ++g) {
        std::vector<Color> s(seq.begin(), seq.begin() + g);
        s.push_back(extra[0]);
        s.insert(s.end(), seq.begin() + g, seq.end());
        insert_all(s, rest, false, out);
    }
}

Color third(Color a, Color b) {
    for (Color c : {R, B, P})
        if (c != a && c != b) return c;
    throw std::logic_error("no third colour");
}

}  // namespace

const char* ckind_name(CKind k) {
    switch (k) {
        case CKind::K3: return "K3";
        case CKind::P3: return "P3";
        case CKind::K2: return "K2";
        case CKind::K3minusR: return "K3-r";
        case CKind::P3minusP: return "P3-p";
        case CKind::P3minusPP: return "P3-p,p";
        case CKind::K3minusRB: return "K3-(r,b)";
    }
    return "?";
}

std::array<int, 3> signature(CKind k) {
    switch (k) {
        case CKind::K3:
        case CKind::P3: return {2, 2, 2};
        case CKind::K2: return {2, 2, 0};
        case CKind::K3minusR: return {1, 2, 2};
        case CKind::P3minusP: return {2, 2, 1};
        case CKind::P3minusPP: return {2, 2, 0};
        case CKind::K3minusRB: return {1, 1, 2};
    }
    return {0, 0, 0};
}

bool alternate(const std::vector<Color>& cyc, Color c, Color d) {
    auto pc = positions(cyc, c);
    auto pd = positions(cyc, d);
    if (pc.size() != 2 || pd.size() != 2) return false;
    int inside = 0;
    for (int x : pd)
        if (x > pc[0] && x < pc[1]) ++inside;
    return inside == 1;
}

bool satisfies(CKind k, const std::vector<Color>& cyc) {
    switch (k) {
        case CKind::K3: return alternate(cyc, R, B) && alternate(cyc, R, P) && alternate(cyc, B, P);
        case CKind::P3: return alternate(cyc, R, P) && alternate(cyc, B, P) && !alternate(cyc, R, B);
        case CKind::K2: return alternate(cyc, R, B);
        case CKind::K3minusR: return alternate(cyc, B, P);
        case CKind::P3minusP: return !alternate(cyc, R, B) && same_neighbours(cyc, P);
        case CKind::P3minusPP: return !alternate(cyc, R, B);
        case CKind::K3minusRB: return adjacent_pair(cyc, P, P);
    }
    return false;
}

bool row_predicate(CKind k, const std::vector<Color>& cyc) {
    switch (k) {
        case CKind::P3minusP: return !alternate(cyc, R, B);
        case CKind::K3minusRB: return adjacent_pair(cyc, R, B);
        default: return satisfies(k, cyc);
    }
}

bool raw_satisfied(const RawConstraint& raw, const std::vector<Color>& cyc) {
    std::vector<std::vector<Color>> cands;
    insert_all(cyc, raw.removed, raw.together, cands);
    for (auto& s : cands)
        if (satisfies(raw.base, s)) return true;
    return false;
}

RawConstraint as_raw(CKind k) {
    switch (k) {
        case CKind::K3: return {CKind::K3, {}, false};
        case CKind::P3: return {CKind::P3, {}, false};
        case CKind::K2: return {CKind::K2, {}, false};
        case CKind::K3minusR: return {CKind::K3, {R}, false};
        case CKind::P3minusP: return {CKind::P3, {P}, false};
        case CKind::P3minusPP: return {CKind::P3, {P, P}, false};
        case CKind::K3minusRB: return {CKind::K3, {R, B}, true};
    }
    return {};
}

Normalized normalize(const RawConstraint& raw, const std::vector<Color>& colors) {
    using S = Normalized::Status;
    Normalized out;
    auto recolor = [&](std::map<Color, Color> m) {
        out.roles.clear();
        for (Color c : colors) out.roles.push_back(m.at(c));
    };
    auto constraint = [&](CKind k, std::map<Color, Color> m) {
        out.status = S::Constraint;
        out.kind = k;
        recolor(std::move(m));
        return out;
    };
    auto verdict = [&](S s) {
        out.status = s;
        return out;
    };
    const auto& rm = raw.removed;
    if (rm.size() > 2) throw std::invalid_argument("at most two darts can be removed");
    if (rm.empty()) {
        std::map<Color, Color> id{{R, R}, {B, B}, {P, P}};
        return constraint(raw.base, id);
    }
    if (rm.size() == 2 && raw.together && rm[0] == rm[1]) return verdict(S::Never);

    if (raw.base == CKind::K2) return verdict(S::Always);

    if (raw.base == CKind::K3) {
        if (rm.size() == 1) {
            Color c = rm[0];
            std::vector<Color> others;
            for (Color x : {R, B, P})
                if (x != c) others.push_back(x);
            return constraint(CKind::K3minusR, {{c, R}, {others[0], B}, {others[1], P}});
        }
        if (!raw.together) {
            if (rm[0] != rm[1]) return verdict(S::Always);
            std::vector<Color> others;
            for (Color x : {R, B, P})
                if (x != rm[0]) others.push_back(x);
            return constraint(CKind::K2, {{others[0], R}, {others[1], B}});
        }
        return constraint(CKind::K3minusRB, {{rm[0], R}, {rm[1], B}, {third(rm[0], rm[1]), P}});
    }

    // P3
    if (rm.size() == 1) {
        if (rm[0] == R) return constraint(CKind::K3minusR, {{R, R}, {B, B}, {P, P}});
        if (rm[0] == B) return constraint(CKind::K3minusR, {{B, R}, {R, B}, {P, P}});
        return constraint(CKind::P3minusP, {{R, R}, {B, B}, {P, P}});
    }
    std::vector<Color> s = rm;
    std::sort(s.begin(), s.end());
    if (!raw.together) {
        if (s[0] != s[1]) return verdict(S::Always);
        if (s[0] == P) return constraint(CKind::P3minusPP, {{R, R}, {B, B}});
        Color other = s[0] == R ? B : R;
        return constraint(CKind::K2, {{other, R}, {P, B}});
    }
    if (s[0] == R && s[1] == B) return constraint(CKind::K3minusRB, {{R, R}, {B, B}, {P, P}});
    // (r,p) removed together: the blues alternate with the rest; (b,p) likewise for the reds
    Color single = s[0] == R ? R : B;  // s = {R,P} or {B,P}
    Color doubled = single == R ? B : R;
    return constraint(CKind::K2, {{single, R}, {P, R}, {doubled, B}});
}

Color AlternationConstraint::color_of(int dart) const {
    for (size_t i = 0; i < darts.size(); ++i)
        if (darts[i] == dart) return colors[i];
    throw std::out_of_range("dart not in constraint");
}

bool AlternationConstraint::holds(const std::vector<int>& rotation) const {
    if (rotation.size() != darts.size()) return false;
    std::vector<Color> cyc;
    for (int d : rotation) cyc.push_back(color_of(d));
    return satisfies(kind, cyc);
}

std::set<CircularOrder> satisfying_orders(const AlternationConstraint& c) {
    std::set<CircularOrder> out;
    for (auto& o : all_circular_orders(c.darts))
        if (c.holds(o)) out.insert(o);
    return out;
}

const char* pattern_name(Pattern p) {
    switch (p) {
        case Pattern::Deg4K2: return "deg4-K2";
        case Pattern::Deg4P3minusPP: return "deg4-P3-p,p";
        case Pattern::Deg4K3minusRB: return "deg4-K3-(r,b)";
        case Pattern::Consec6K3: return "pair6-K3";
        case Pattern::Consec6P3RB: return "pair6-P3-rb";
        case Pattern::Consec6P3PR: return "pair6-P3-pr";
        case Pattern::Consec5PSame: return "pair5-P3-p-same";
        case Pattern::Consec5PRB: return "pair5-P3-p-rb";
        case Pattern::Consec5PPR: return "pair5-P3-p-pr";
        case Pattern::Consec5RPair: return "pair5-K3-r-red";
        case Pattern::Consec5RTwo: return "pair5-K3-r-two";
        case Pattern::Alternation4: return "alternation4";
    }
    return "?";
}

namespace {

struct Template {
    std::vector<std::string> tokens;
    std::vector<Color> colors;
    std::string text;
};

const Template& template_of(Pattern p) {
    static const std::map<Pattern, Template> table = {
        {Pattern::Deg4K2, {{"r1", "b1", "r2", "b2"}, {R, B, R, B}, "Q[r1 b1 r2 b2]"}},
        {Pattern::Deg4P3minusPP, {{"r1", "r2", "b1", "b2"}, {R, R, B, B}, "P(P(r1 r2) b1 b2)"}},
        {Pattern::Deg4K3minusRB, {{"p1", "p2", "r", "b"}, {P, P, R, B}, "P(P(p1 p2) r b)"}},
        {Pattern::Consec6K3,
         {{"r1", "b1", "r2", "b2", "p1", "p2"}, {R, B, R, B, P, P}, "Q[Q#1[r1 b1] p1 Q#1[r2 b2] p2]"}},
        {Pattern::Consec6P3RB,
         {{"r1", "b1", "r2", "b2", "p1", "p2"}, {R, B, R, B, P, P}, "Q[Q#1[r1 b1] p1 Q#1[b2 r2] p2]"}},
        {Pattern::Consec6P3PR,
         {{"p1", "r1", "r2", "b1", "b2", "p2"}, {P, R, R, B, B, P}, "Q[r1 p1 r2 Q[b1 p2 b2]]"}},
        {Pattern::Consec5PSame, {{"r1", "r2", "b1", "b2", "p"}, {R, R, B, B, P}, "P(r1 r2 Q[b1 p b2])"}},
        {Pattern::Consec5PRB, {{"r1", "b1", "r2", "b2", "p"}, {R, B, R, B, P}, "Q#1[r2 Q[Q#1[r1 b1] p] b2]"}},
        {Pattern::Consec5PPR, {{"p", "r1", "r2", "b1", "b2"}, {P, R, R, B, B}, "Q[r1 p r2 P(b1 b2)]"}},
        {Pattern::Consec5RPair, {{"r", "b1", "b2", "p1", "p2"}, {R, B, B, P, P}, "Q[P(r b1) p1 b2 p2]"}},
        {Pattern::Consec5RTwo, {{"b1", "p1", "b2", "p2", "r"}, {B, P, B, P, R}, "P(Q#1[b1 p1] r Q#1[b2 p2])"}},
        {Pattern::Alternation4, {{"b1", "p1", "b2", "p2"}, {B, P, B, P}, "Q[b1 p1 b2 p2]"}},
    };
    return table.at(p);
}

}  // namespace

std::vector<Color> pattern_roles(Pattern p) { return template_of(p).colors; }
std::string pattern_template(Pattern p) { return template_of(p).text; }

PQTree canned_tree(Pattern p, const std::vector<int>& darts, const std::vector<Color>& colors) {
    const Template& t = template_of(p);
    if (darts.size() != t.tokens.size() || colors != t.colors)
        throw SignatureMismatch(std::string("darts do not fit pattern ") + pattern_name(p));
    std::map<std::string, int> slot;
    for (size_t i = 0; i < darts.size(); ++i) slot[t.tokens[i]] = darts[i];
    return PQTree::parse(t.text, [&](const std::string& tok) { return slot.at(tok); });
}

PQTree deg4_tree(const AlternationConstraint& c) {
    auto pick = [&](Color col) {
        std::vector<int> out;
        for (size_t i = 0; i < c.darts.size(); ++i)
            if (c.colors[i] == col) out.push_back(c.darts[i]);
        return out;
    };
    auto r = pick(R), b = pick(B), p = pick(P);
    switch (c.kind) {
        case CKind::K2: return canned_tree(Pattern::Deg4K2, {r[0], b[0], r[1], b[1]}, {R, B, R, B});
        case CKind::P3minusPP: return canned_tree(Pattern::Deg4P3minusPP, {r[0], r[1], b[0], b[1]}, {R, R, B, B});
        case CKind::K3minusRB: return canned_tree(Pattern::Deg4K3minusRB, {p[0], p[1], r[0], b[0]}, {P, P, R, B});
        default: throw SignatureMismatch("not a degree-4 constraint");
    }
}

PairReplacement replace_with_pairs(const AlternationConstraint& c, const std::vector<std::pair<int, int>>& pairs) {
    using S = PairReplacement::Status;
    PairReplacement out;
    if (pairs.empty()) return out;
    // a pair that no satisfying order keeps consecutive rejects outright
    {
        bool any = false;
        for (auto& o : satisfying_orders(c)) {
            bool ok = true;
            for (auto [x, y] : pairs) ok = ok && consecutive_in(o, {x, y});
            if (ok) {
                any = true;
                break;
            }
        }
        if (!any) {
            out.status = S::No;
            return out;
        }
    }
    auto col = [&](int d) { return c.color_of(d); };
    auto others = [&](Color k, std::initializer_list<int> skip) {
        std::vector<int> v;
        for (size_t i = 0; i < c.darts.size(); ++i)
            if (c.colors[i] == k && std::find(skip.begin(), skip.end(), c.darts[i]) == skip.end())
                v.push_back(c.darts[i]);
        return v;
    };
    auto make = [&](Pattern p, std::vector<int> darts) {
        out.status = S::Tree;
        out.pattern = p;
        out.tree = canned_tree(p, darts, pattern_roles(p));
        return out;
    };
    auto [e, f] = pairs[0];
    switch (c.kind) {
        case CKind::K3: {
            Color ce = col(e), cf = col(f), cp = third(ce, cf);
            // recolour ce -> red, cf -> blue, the rest -> purple
            std::vector<int> pp = others(cp, {});
            return make(Pattern::Consec6K3, {e, f, others(ce, {e})[0], others(cf, {f})[0], pp[0], pp[1]});
        }
        case CKind::P3: {
            if (col(e) == P) std::swap(e, f);
            if (col(f) == P) {
                // pair (x, p) with x red or blue; red and blue are symmetric
                Color x = col(e), y = x == R ? B : R;
                auto yy = others(y, {});
                return make(Pattern::Consec6P3PR, {f, e, others(x, {e})[0], yy[0], yy[1], others(P, {f})[0]});
            }
            if (col(e) == B) std::swap(e, f);
            auto pp = others(P, {});
            return make(Pattern::Consec6P3RB, {e, f, others(R, {e})[0], others(B, {f})[0], pp[0], pp[1]});
        }
        case CKind::P3minusP: {
            if (col(e) == col(f)) {
                Color x = col(e), y = x == R ? B : R;
                auto yy = others(y, {});
                return make(Pattern::Consec5PSame, {e, f, yy[0], yy[1], others(P, {})[0]});
            }
            if (col(e) == P) std::swap(e, f);
            if (col(f) == P) {
                Color x = col(e), y = x == R ? B : R;
                auto yy = others(y, {});
                return make(Pattern::Consec5PPR, {f, e, others(x, {e})[0], yy[0], yy[1]});
            }
            if (col(e) == B) std::swap(e, f);
            return make(Pattern::Consec5PRB, {e, f, others(R, {e})[0], others(B, {f})[0], others(P, {})[0]});
        }
        case CKind::K3minusR: {
            auto with_red = [&](int r, int x) {
                Color cx = col(x), cy = cx == B ? P : B;
                auto yy = others(cy, {});
                return make(Pattern::Consec5RPair, {r, x, others(cx, {x})[0], yy[0], yy[1]});
            };
            for (auto [a, b] : pairs) {
                if (col(a) == R) return with_red(a, b);
                if (col(b) == R) return with_red(b, a);
            }
            for (size_t i = 0; i < pairs.size(); ++i)
                for (size_t j = i + 1; j < pairs.size(); ++j) {
                    auto [a, b] = pairs[i];
                    auto [x, y] = pairs[j];
                    std::set<int> u{a, b, x, y};
                    if (u.size() == 4) {
                        if (col(a) != B) std::swap(a, b);
                        if (col(x) != B) std::swap(x, y);
                        return make(Pattern::Consec5RTwo, {a, b, x, y, others(R, {})[0]});
                    }
                    if (u.size() == 3) {
                        // three consecutive darts leave the other two consecutive, red among them
                        std::vector<int> rest;
                        for (int d : c.darts)
                            if (!u.count(d)) rest.push_back(d);
                        if (col(rest[0]) == R) return with_red(rest[0], rest[1]);
                        return with_red(rest[1], rest[0]);
                    }
                }
            return out;
        }
        default: return out;
    }
}

}  // namespace satr
