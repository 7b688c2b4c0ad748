#include <algorithm>
#include <map>
#include <set>

#include "acp_internal.hpp"

namespace satr {

ACPInstance contract_crossings(const ATGraph& a, const std::vector<CrossingComponent>& comps) {
    const Graph& g = a.graph;
    ACPInstance h;
    h.input_n = g.vertex_count();
    h.n = h.input_n;
    h.comps = comps;
    std::vector<int> comp_of(g.edge_count(), -1);
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
        h.crossing_vertex.push_back(h.n++);
        for (int e : comps[i].edges) comp_of[e] = i;
    }
    for (int e = 0; e < g.edge_count(); ++e)
        if (comp_of[e] < 0) {
            h.edges.push_back({g.edges[e].u, g.edges[e].v});
            h.origin.push_back({e, -1, 0});
        }
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
        const CrossingComponent& cc = comps[i];
        const int c = h.crossing_vertex[i];
        AlternationConstraint con;
        con.kind = cc.kind == ComponentKind::K3 ? CKind::K3 : cc.kind == ComponentKind::P3 ? CKind::P3 : CKind::K2;
        std::set<int> used;
        for (size_t r = 0; r < cc.edges.size(); ++r) {
            const int e = cc.edges[r];
            const int ends[2] = {g.edges[e].u, g.edges[e].v};
            for (int s = 0; s < 2; ++s) {
                int x = ends[s];
                con.darts.push_back(static_cast<int>(h.edges.size()));
                con.colors.push_back(cc.colors[r]);
                if (used.insert(x).second) {
                    h.edges.push_back({c, x});
                    h.origin.push_back({e, i, s});
                } else {
                    // red and blue of a path share an end; keep the graph simple
                    int mid = h.n++;
                    h.edges.push_back({c, mid});
                    h.origin.push_back({e, i, s});
                    h.edges.push_back({mid, x});
                    h.origin.push_back({e, i, s});
                }
            }
        }
        h.slots[c] = Slot::of(con);
    }
    return h;
}

bool planarity_gate(const ACPInstance& h) { return embed_edges(h.n, h.edges).has_value(); }

namespace {

bool interleave(const std::vector<int>& o, const std::set<int>& a, const std::set<int>& b) {
    // a b a b along the cycle
    std::vector<int> seq;
    for (int d : o) {
        int w = a.count(d) ? 0 : b.count(d) ? 1 : -1;
        if (w >= 0 && (seq.empty() || seq.back() != w)) seq.push_back(w);
    }
    if (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
    return seq.size() >= 4;
}

}  // namespace

bool detail::non_interleaving(const std::vector<int>& order, const std::vector<std::vector<int>>& groups) {
    std::vector<std::set<int>> gs;
    for (auto& g : groups) gs.emplace_back(g.begin(), g.end());
    for (size_t i = 0; i < gs.size(); ++i)
        for (size_t j = i + 1; j < gs.size(); ++j)
            if (interleave(order, gs[i], gs[j])) return false;
    return true;
}

CutDecision split_cut_vertex(const AlternationConstraint& c, const std::vector<std::vector<int>>& groups) {
    CutDecision out;
    out.groups = groups;
    out.copies.assign(groups.size(), Slot::none());
    int big = -1;
    for (int i = 0; i < static_cast<int>(groups.size()); ++i)
        if (groups[i].size() >= 4) big = i;
    if (big >= 0) {
        std::vector<int> removed;
        for (int i = 0; i < static_cast<int>(groups.size()); ++i)
            if (i != big) removed.insert(removed.end(), groups[i].begin(), groups[i].end());
        bool together = groups.size() == 2 && removed.size() == 2;
        auto s = detail::derive_removed(c, removed, together);
        if (!s) {
            out.feasible = false;
            return out;
        }
        out.copies[big] = *s;
        return out;
    }
    // every part is small enough to take any order of its darts
    out.feasible = false;
    for (auto& o : all_circular_orders(c.darts))
        if (detail::non_interleaving(o, groups) && c.holds(o)) {
            out.feasible = true;
            break;
        }
    return out;
}

namespace {

// Biconnected components as edge lists (iterative).
std::vector<std::vector<int>> blocks_of(int n, const std::vector<std::array<int, 2>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[edges[e][0]].push_back(e);
        adj[edges[e][1]].push_back(e);
    }
    std::vector<int> tin(n, -1), low(n, 0), it(n, 0), via(n, -1);
    std::vector<int> estack;
    std::vector<std::vector<int>> out;
    int timer = 0;
    for (int s = 0; s < n; ++s) {
        if (tin[s] >= 0) continue;
        std::vector<int> st{s};
        tin[s] = low[s] = timer++;
        while (!st.empty()) {
            int v = st.back();
            if (it[v] < static_cast<int>(adj[v].size())) {
                int e = adj[v][it[v]++];
                if (e == via[v]) continue;
                int w = edges[e][0] == v ? edges[e][1] : edges[e][0];
                if (tin[w] < 0) {
                    estack.push_back(e);
                    via[w] = e;
                    tin[w] = low[w] = timer++;
                    st.push_back(w);
                } else if (tin[w] < tin[v]) {
                    estack.push_back(e);
                    low[v] = std::min(low[v], tin[w]);
                }
                continue;
            }
            st.pop_back();
            if (st.empty()) break;
            int p = st.back();
            low[p] = std::min(low[p], low[v]);
            if (low[v] >= tin[p]) {
                std::vector<int> blk;
                while (true) {
                    int e = estack.back();
                    estack.pop_back();
                    blk.push_back(e);
                    if (e == via[v]) break;
                }
                out.push_back(std::move(blk));
            }
        }
    }
    return out;
}

Slot relabel(Slot s, const std::map<int, int>& to) {
    if (s.kind == Slot::Kind::Alt) {
        for (int& d : s.alt.darts) d = to.at(d);
    } else if (s.kind == Slot::Kind::PQ) {
        for (auto& nd : s.tree.nodes)
            if (nd.kind == PQTree::Kind::Leaf) nd.label = to.at(nd.label);
    }
    return s;
}

}  // namespace

SplitResult split_biconnected(const ACPInstance& h, Trace* trace) {
    SplitResult out;
    auto blks = blocks_of(h.n, h.edges);
    // blocks at each constrained vertex
    std::map<int, std::map<int, std::vector<int>>> at;  // vertex -> block -> darts
    for (int b = 0; b < static_cast<int>(blks.size()); ++b)
        for (int e : blks[b])
            for (int s = 0; s < 2; ++s) {
                int v = h.edges[e][s];
                if (h.slots.count(v)) at[v][b].push_back(e);
            }
    std::map<std::pair<int, int>, Slot> copy;  // (vertex, block)
    for (auto& [v, per] : at) {
        const Slot& sl = h.slots.at(v);
        if (per.size() == 1) {
            copy[{v, per.begin()->first}] = sl;
            continue;
        }
        std::vector<int> ids;
        std::vector<std::vector<int>> groups;
        for (auto& [b, ds] : per) {
            ids.push_back(b);
            groups.push_back(ds);
        }
        CutDecision d = split_cut_vertex(sl.alt, groups);
        if (trace) {
            std::string sizes;
            for (auto& gr : groups) sizes += (sizes.empty() ? "" : ",") + std::to_string(gr.size());
            trace->push_back("LEMMA cut vertex=" + std::to_string(v) + " action=" + (d.feasible ? "split:" : "reject:") +
                             sizes);
        }
        if (!d.feasible) {
            out.feasible = false;
            return out;
        }
        for (size_t i = 0; i < ids.size(); ++i) copy[{v, ids[i]}] = d.copies[i];
    }
    for (int b = 0; b < static_cast<int>(blks.size()); ++b) {
        GACP g;
        std::map<int, int> lv, le;
        auto local = [&](int v) {
            auto f = lv.find(v);
            if (f != lv.end()) return f->second;
            return lv[v] = g.add_vertex(v);
        };
        std::vector<int> es = blks[b];
        std::sort(es.begin(), es.end());
        for (int e : es) le[e] = g.add_edge(local(h.edges[e][0]), local(h.edges[e][1]), e);
        for (auto [v, l] : lv) {
            auto f = copy.find({v, b});
            if (f != copy.end()) g.slot[l] = relabel(f->second, le);
        }
        out.blocks.push_back(std::move(g));
    }
    return out;
}

}  // namespace satr
