#include <algorithm>
#include <set>

#include "satr/atcore.hpp"
#include "satr/embedding.hpp"

namespace satr {

namespace {

// Darts of the planarization, numbered by segment: segment k of the global
// segment list owns darts 2k (end 0) and 2k+1 (end 1).
struct Planarization {
    std::vector<int> seg_base;  // per edge, index of its segment 0
    RotationSystem rs;
};

}  // namespace

bool check_certificate(const ATGraph& a, const PlanarizationCertificate& w) {
    const Graph& g = a.graph;
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const int dn = static_cast<int>(w.dummies.size());
    if (static_cast<int>(w.routes.size()) != m) throw MalformedCertificate("route count differs from edge count");
    if (static_cast<int>(w.rotations.size()) != n + dn)
        throw MalformedCertificate("rotation count differs from node count");

    // (i) dummies biject with the crossing pairs
    std::set<std::pair<int, int>> want;
    for (auto [e, f] : a.crossings) want.insert(std::minmax(e, f));
    std::set<std::pair<int, int>> got;
    for (auto [e, f] : w.dummies) {
        if (e < 0 || f < 0 || e >= m || f >= m) throw MalformedCertificate("dummy references unknown edge");
        if (!got.insert(std::minmax(e, f)).second) return false;
    }
    if (got != want) return false;

    // (iv) routes are consistent and visit each dummy once
    std::vector<int> seen_on(dn, 0);
    for (int e = 0; e < m; ++e) {
        std::set<int> here;
        for (int d : w.routes[e]) {
            if (d < 0 || d >= dn) throw MalformedCertificate("route references unknown dummy");
            if (!here.insert(d).second) return false;
            auto [x, y] = w.dummies[d];
            if (x != e && y != e) return false;
            ++seen_on[d];
        }
    }
    for (int d = 0; d < dn; ++d)
        if (seen_on[d] != 2) return false;

    Planarization p;
    p.rs.n = n + dn;
    p.seg_base.resize(m);
    for (int e = 0; e < m; ++e) {
        p.seg_base[e] = p.rs.edge_count();
        const auto& r = w.routes[e];
        int prev = g.edges[e].u;
        for (int d : r) {
            p.rs.ends.push_back({prev, n + d});
            prev = n + d;
        }
        p.rs.ends.push_back({prev, g.edges[e].v});
    }
    p.rs.rot.assign(n + dn, {});
    for (int x = 0; x < n + dn; ++x) {
        for (const CertDart& cd : w.rotations[x]) {
            if (cd.edge < 0 || cd.edge >= m) throw MalformedCertificate("dart references unknown edge");
            if (cd.seg < 0 || cd.seg > static_cast<int>(w.routes[cd.edge].size()) || (cd.end != 0 && cd.end != 1))
                throw MalformedCertificate("dart references unknown segment");
            p.rs.rot[x].push_back(2 * (p.seg_base[cd.edge] + cd.seg) + cd.end);
        }
    }
    if (!p.rs.well_formed()) return false;

    // (ii) alternation at every dummy
    for (int d = 0; d < dn; ++d) {
        const auto& r = w.rotations[n + d];
        if (r.size() != 4) return false;
        if (r[0].edge != r[2].edge || r[1].edge != r[3].edge || r[0].edge == r[1].edge) return false;
    }
    // (iii) genus zero per component
    return euler_check(p.rs);
}

void canonicalize(const Graph& g, PlanarizationCertificate& w) {
    auto less = [&](const CertDart& x, const CertDart& y) {
        const std::string& a = g.edges[x.edge].id;
        const std::string& b = g.edges[y.edge].id;
        if (a != b) return a < b;
        if (x.seg != y.seg) return x.seg < y.seg;
        return x.end < y.end;
    };
    for (auto& r : w.rotations) {
        if (r.empty()) continue;
        auto it = std::min_element(r.begin(), r.end(), less);
        std::rotate(r.begin(), it, r.end());
    }
}

}  // namespace satr
