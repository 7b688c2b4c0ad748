#include <algorithm>
#include <numeric>
#include <set>

#include "acp_internal.hpp"

namespace satr {

namespace detail {

TreeView::TreeView(const GACP& g) {
    tv_of.assign(g.n, -1);
    te_of.assign(g.edges.size(), -1);
    std::vector<std::array<int, 2>> es;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (!g.active[e]) continue;
        for (int s = 0; s < 2; ++s) {
            int v = g.edges[e][s];
            if (tv_of[v] < 0) {
                tv_of[v] = static_cast<int>(lv_of.size());
                lv_of.push_back(v);
            }
        }
        te_of[e] = static_cast<int>(es.size());
        le_of.push_back(e);
        es.push_back({tv_of[g.edges[e][0]], tv_of[g.edges[e][1]]});
    }
    t = build_spqr(static_cast<int>(lv_of.size()), es);
    inc_.assign(lv_of.size(), {});
    for (int x = 0; x < static_cast<int>(t.nodes.size()); ++x) {
        if (!t.nodes[x].alive) continue;
        const auto& ed = t.nodes[x].edges;
        for (int i = 0; i < static_cast<int>(ed.size()); ++i) {
            inc_[ed[i].u].push_back({x, i});
            if (ed[i].v != ed[i].u) inc_[ed[i].v].push_back({x, i});
        }
    }
    for (auto& l : inc_) std::sort(l.begin(), l.end());
}

std::vector<int> TreeView::nodes_at(int v) const {
    std::vector<int> r;
    if (!has(v)) return r;
    for (auto [x, i] : inc_[tv_of[v]])
        if (t.nodes[x].type != SPQRTree::Type::Q && (r.empty() || r.back() != x)) r.push_back(x);
    // a graph with a single edge or a single bond has no other nodes
    if (r.empty())
        for (auto [x, i] : inc_[tv_of[v]])
            if (r.empty() || r.back() != x) r.push_back(x);
    return r;
}

std::vector<int> TreeView::skel_at(int node, int v) const {
    std::vector<int> r;
    const auto& l = inc_[tv_of[v]];
    auto it = std::lower_bound(l.begin(), l.end(), std::make_pair(node, -1));
    for (; it != l.end() && it->first == node; ++it) r.push_back(it->second);
    return r;
}

std::vector<int> TreeView::behind(int node, int e, int v) const {
    std::vector<int> r;
    int tv = tv_of[v];
    std::vector<std::pair<int, int>> st{{node, e}};
    while (!st.empty()) {
        auto [x, i] = st.back();
        st.pop_back();
        const SPQRTree::SkelEdge& s = t.nodes[x].edges[i];
        if (!s.is_virtual()) {
            if (s.real >= 0) r.push_back(le_of[s.real]);
            continue;
        }
        int y = s.twin_node;
        const auto& l = inc_[tv];
        auto it = std::lower_bound(l.begin(), l.end(), std::make_pair(y, -1));
        for (; it != l.end() && it->first == y; ++it)
            if (it->second != s.twin_edge) st.push_back({y, it->second});
    }
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<int> TreeView::all_behind(int node, int e) const {
    std::vector<int> r;
    for (int x : t.all_edges_behind(node, e)) r.push_back(le_of[x]);
    std::sort(r.begin(), r.end());
    return r;
}

std::pair<int, int> TreeView::poles(int node) const {
    auto vs = t.skeleton_vertices(node);
    if (vs.size() != 2) throw StructureViolation("P-node without two poles");
    return {lv_of[vs[0]], lv_of[vs[1]]};
}

std::vector<int> TreeView::r_rotation(int node, int v) const {
    auto it = r_emb_.find(node);
    if (it == r_emb_.end()) it = r_emb_.emplace(node, std::make_pair(t.skeleton(node), skeleton_embedding(t, node))).first;
    const auto& [sk, emb] = it->second;
    std::vector<int> r;
    for (int d : emb.rot[sk.local(tv_of[v])]) r.push_back(d >> 1);
    return r;
}

PFrame make_frame(const TreeView& tv, int node, int v) {
    auto [a, b] = tv.poles(node);
    PFrame f;
    f.v = v;
    f.u = a == v ? b : a;
    for (int e : tv.skel_at(node, v)) {
        f.at_v.push_back(tv.behind(node, e, v));
        f.at_u.push_back(tv.behind(node, e, f.u));
        f.skel.push_back(e);
    }
    f.flippable.assign(f.at_v.size(), 0);
    return f;
}

std::optional<Slot> derive_removed(const AlternationConstraint& c, const std::vector<int>& removed, bool together) {
    RawConstraint raw = as_raw(c.kind);
    if (!removed.empty() && !raw.removed.empty() && together)
        throw std::invalid_argument("cannot remove a run from a reduced constraint");
    for (int d : removed) raw.removed.push_back(c.color_of(d));
    raw.together = together && removed.size() > 1;
    AlternationConstraint out;
    std::vector<Color> cols;
    for (size_t i = 0; i < c.darts.size(); ++i)
        if (std::find(removed.begin(), removed.end(), c.darts[i]) == removed.end()) {
            out.darts.push_back(c.darts[i]);
            cols.push_back(c.colors[i]);
        }
    Normalized nz = normalize(raw, cols);
    if (nz.status == Normalized::Status::Never) return std::nullopt;
    if (nz.status == Normalized::Status::Always) return Slot::none();
    out.kind = nz.kind;
    out.colors = nz.roles;
    if (out.darts.size() == 4) return Slot::of(deg4_tree(out));
    return Slot::of(out);
}

std::vector<int> edges_of(const std::vector<int>& darts) {
    std::vector<int> r;
    r.reserve(darts.size());
    for (int d : darts) r.push_back(d >> 1);
    return r;
}

std::vector<std::vector<int>> cyclic_orders(int k) {
    std::vector<std::vector<int>> out;
    if (k == 0) return {{}};
    std::vector<int> rest(k - 1);
    std::iota(rest.begin(), rest.end(), 1);
    do {
        std::vector<int> o{0};
        o.insert(o.end(), rest.begin(), rest.end());
        out.push_back(o);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

std::vector<std::pair<int, int>> consecutive_pairs_in(const TreeView& tv, const GACP& g, int v) {
    std::set<std::pair<int, int>> out;
    auto add = [&](int a, int b) { out.insert(std::minmax(a, b)); };
    std::vector<int> all = g.incident(v);
    const int deg = static_cast<int>(all.size());
    for (int x : tv.nodes_at(v)) {
        std::map<int, std::vector<int>> groups;
        for (int e : tv.skel_at(x, v)) groups[e] = tv.behind(x, e, v);
        for (auto& [e, grp] : groups) {
            if (grp.size() == 2) add(grp[0], grp[1]);
            if (static_cast<int>(grp.size()) == deg - 2) {
                std::vector<int> rest;
                for (int d : all)
                    if (!std::binary_search(grp.begin(), grp.end(), d)) rest.push_back(d);
                if (rest.size() == 2) add(rest[0], rest[1]);
            }
        }
        if (tv.t.nodes[x].type == SPQRTree::Type::R) {
            auto rot = tv.r_rotation(x, v);
            const int k = static_cast<int>(rot.size());
            for (int i = 0; i < k; ++i) {
                const auto& a = groups[rot[i]];
                const auto& b = groups[rot[(i + 1) % k]];
                if (a.size() == 1 && b.size() == 1 && a[0] != b[0]) add(a[0], b[0]);
            }
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace detail

std::vector<std::pair<int, int>> find_consecutive_pairs(const GACP& g, int v) {
    detail::TreeView tv(g);
    return consecutive_pairs_in(tv, g, v);
}

}  // namespace satr
