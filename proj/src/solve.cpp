#include <algorithm>
#include <deque>
#include <set>

#include "acp_internal.hpp"

namespace satr {

namespace {

bool same_cycle(const std::vector<int>& a, std::vector<int> b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    auto it = std::find(b.begin(), b.end(), a[0]);
    if (it == b.end()) return false;
    std::rotate(b.begin(), it, b.end());
    return a == b;
}

std::vector<int> restrict_to(const std::vector<int>& o, const std::set<int>& keep) {
    std::vector<int> r;
    for (int d : o)
        if (keep.count(d)) r.push_back(d);
    return r;
}

// Glue the block embeddings at cut vertices, top-down over the block-cut forest.
RotationSystem merge_blocks(const ACPInstance& h, const std::vector<GACP>& blocks,
                            std::vector<RotationSystem>& emb) {
    RotationSystem out;
    out.n = h.n;
    out.ends = h.edges;
    out.rot.assign(h.n, {});
    // block rotations in instance darts
    std::vector<std::map<int, std::vector<int>>> rot(blocks.size());
    std::vector<std::vector<int>> blocks_at(h.n);
    for (size_t b = 0; b < blocks.size(); ++b) {
        const GACP& g = blocks[b];
        for (int v = 0; v < g.n; ++v) {
            std::vector<int> ds;
            for (int d : emb[b].rot[v]) ds.push_back(2 * g.eid[d >> 1] + (d & 1));
            rot[b][g.vid[v]] = ds;
            blocks_at[g.vid[v]].push_back(static_cast<int>(b));
        }
    }
    auto flip = [&](int b) {
        for (auto& [v, ds] : rot[b]) std::reverse(ds.begin(), ds.end());
    };
    std::vector<char> done(blocks.size(), 0), merged(h.n, 0);
    for (size_t root = 0; root < blocks.size(); ++root) {
        if (done[root]) continue;
        done[root] = 1;
        std::deque<int> q{static_cast<int>(root)};
        while (!q.empty()) {
            int b = q.front();
            q.pop_front();
            for (auto& [x, own] : rot[b]) {
                if (merged[x]) continue;
                merged[x] = 1;
                std::vector<int> kids;
                for (int c : blocks_at[x])
                    if (!done[c]) kids.push_back(c);
                std::vector<int> r = own;
                auto slot = h.slots.find(x);
                if (kids.empty()) {
                    // not a cut vertex, or reached last
                } else if (slot == h.slots.end()) {
                    for (int c : kids) r.insert(r.end(), rot[c][x].begin(), rot[c][x].end());
                } else {
                    const AlternationConstraint& con = slot->second.alt;
                    std::vector<std::vector<int>> groups{own};
                    std::vector<int> all = own;
                    for (int c : kids) {
                        groups.push_back(rot[c][x]);
                        all.insert(all.end(), rot[c][x].begin(), rot[c][x].end());
                    }
                    std::vector<std::set<int>> sets;
                    for (auto& gr : groups) sets.emplace_back(gr.begin(), gr.end());
                    bool found = false;
                    for (auto& o : all_circular_orders(all)) {
                        if (!same_cycle(restrict_to(o, sets[0]), own)) continue;
                        if (!detail::non_interleaving(o, groups) || !con.holds(detail::edges_of(o))) continue;
                        unsigned mask = 0;
                        bool ok = true;
                        for (size_t i = 1; i < groups.size() && ok; ++i) {
                            auto got = restrict_to(o, sets[i]);
                            if (same_cycle(got, groups[i])) continue;
                            auto rev = groups[i];
                            std::reverse(rev.begin(), rev.end());
                            if (same_cycle(got, rev)) mask |= 1u << i;
                            else ok = false;
                        }
                        if (!ok) continue;
                        for (size_t i = 1; i < groups.size(); ++i)
                            if (mask >> i & 1) flip(kids[i - 1]);
                        r = o;
                        found = true;
                        break;
                    }
                    if (!found) throw InternalInconsistency("no merge order at cut vertex " + std::to_string(x));
                }
                out.rot[x] = r;
                for (int c : kids) {
                    done[c] = 1;
                    q.push_back(c);
                }
            }
        }
    }
    return out;
}

}  // namespace

PlanarizationCertificate certificate_from_contracted(const ATGraph& a, const ACPInstance& h, const RotationSystem& r) {
    const Graph& g = a.graph;
    PlanarizationCertificate w;
    w.routes.assign(g.edge_count(), {});
    std::vector<std::vector<CertDart>> dummy_rot;
    for (size_t i = 0; i < h.comps.size(); ++i) {
        const CrossingComponent& cc = h.comps[i];
        const int c = h.crossing_vertex[i];
        std::vector<int> codes;
        for (int d : r.rot[c]) {
            const EdgeOrigin& o = h.origin[d >> 1];
            int role = static_cast<int>(std::find(cc.edges.begin(), cc.edges.end(), o.edge) - cc.edges.begin());
            codes.push_back(2 * role + o.end);
        }
        auto u = untangle(cc.kind, codes);
        if (!u) throw InternalInconsistency("crossing vertex rotation has no untangled expansion");
        const int base = static_cast<int>(w.dummies.size());
        for (auto [x, y] : u->dummies) w.dummies.push_back(std::minmax(cc.edges[x], cc.edges[y]));
        for (size_t role = 0; role < cc.edges.size(); ++role)
            for (int d : u->routes[role]) w.routes[cc.edges[role]].push_back(base + d);
        for (auto& dr : u->rotations) {
            std::vector<CertDart> ds;
            for (auto [role, seg, end] : dr) ds.push_back({cc.edges[role], seg, end});
            dummy_rot.push_back(ds);
        }
    }
    for (int x = 0; x < h.input_n; ++x) {
        std::vector<CertDart> ds;
        for (int d : r.rot[x]) {
            const EdgeOrigin& o = h.origin[d >> 1];
            if (o.comp < 0) ds.push_back({o.edge, 0, g.edges[o.edge].u == x ? 0 : 1});
            else if (o.end == 0) ds.push_back({o.edge, 0, 0});
            else ds.push_back({o.edge, static_cast<int>(w.routes[o.edge].size()), 1});
        }
        w.rotations.push_back(ds);
    }
    for (auto& ds : dummy_rot) w.rotations.push_back(ds);
    return w;
}

Verdict solve(const ATGraph& a, Trace* trace) {
    Verdict v;
    auto no = [&](Reason r) {
        v.yes = false;
        v.reason = r;
        if (trace) trace->push_back(std::string("LEMMA verdict vertex=-1 action=no:") + reason_name(r));
        return v;
    };
    a.check();
    if (Reason r = validate(a); r != Reason::None) return no(r);
    auto comps = classify_components(build_crossing_graph(a));
    ACPInstance h = contract_crossings(a, comps);
    if (!planarity_gate(h)) return no(Reason::NonPlanarContraction);
    SplitResult sp = split_biconnected(h, trace);
    if (!sp.feasible) return no(Reason::CutVertexConflict);
    std::vector<RotationSystem> emb;
    for (const GACP& b : sp.blocks) {
        Reason why = Reason::None;
        auto e = solve_block(b, trace, &why);
        if (!e) return no(why);
        emb.push_back(std::move(*e));
    }
    RotationSystem r = merge_blocks(h, sp.blocks, emb);
    if (genus_defect(r) != 0) throw InternalInconsistency("merged embedding is not planar");
    PlanarizationCertificate w = certificate_from_contracted(a, h, r);
    canonicalize(a.graph, w);
    if (!check_certificate(a, w)) throw InternalInconsistency("extracted certificate fails the check");
    v.yes = true;
    v.witness = std::move(w);
    return v;
}

}  // namespace satr
