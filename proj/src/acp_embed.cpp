#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "acp_internal.hpp"

namespace satr {

namespace {

// What an edge of the expanded graph stands for.
struct HEdge {
    enum class Kind { Real, Tree, Rim, Spoke } kind = Kind::Real;
    int owner = -1;  // local vertex whose gadget holds it
    int a = -1, b = -1;  // tree nodes (Tree), or tree node and rim index (Spoke)
};

struct Gadget {
    int v = -1;
    const PQTree* tree = nullptr;
    std::vector<int> at;                    // per tree node: P vertex, or hub for Q
    std::vector<std::vector<int>> rim;      // per Q node: rim vertex per neighbour slot
    std::vector<int> spoke;                 // per Q node: its first spoke edge
};

// parity union-find over R-node mirror bits
struct Parity {
    std::vector<int> up, par;
    explicit Parity(int n) : up(n), par(n, 0) { std::iota(up.begin(), up.end(), 0); }
    std::pair<int, int> find(int x) {
        int p = 0;
        while (up[x] != x) {
            p ^= par[x];
            x = up[x];
        }
        return {x, p};
    }
    bool join(int x, int y, int want) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) return (px ^ py) == want;
        up[rx] = ry;
        par[rx] = px ^ py ^ want;
        return true;
    }
};

}  // namespace

std::optional<RotationSystem> expand_and_embed(const GACP& g, Reason* why) {
    auto fail = [&](Reason r) -> std::optional<RotationSystem> {
        if (why) *why = r;
        return std::nullopt;
    };
    int hn = 0;
    std::vector<std::array<int, 2>> hedges;
    std::vector<HEdge> info;
    auto add = [&](int a, int b, HEdge h) {
        hedges.push_back({a, b});
        info.push_back(h);
        return static_cast<int>(hedges.size()) - 1;
    };

    std::vector<int> plain(g.n, -1);
    std::vector<int> gadget_of(g.n, -1);
    std::vector<Gadget> gadgets;
    for (int v = 0; v < g.n; ++v) {
        if (g.incident(v).empty()) continue;
        const Slot& s = g.slot[v];
        if (s.kind == Slot::Kind::Alt) throw StructureViolation("alternation constraint left for expansion");
        if (s.kind == Slot::Kind::None) {
            plain[v] = hn++;
            continue;
        }
        Gadget gd;
        gd.v = v;
        gd.tree = &s.tree;
        const auto& nodes = s.tree.nodes;
        gd.at.assign(nodes.size(), -1);
        gd.rim.assign(nodes.size(), {});
        gd.spoke.assign(nodes.size(), -1);
        for (int x = 0; x < static_cast<int>(nodes.size()); ++x) {
            if (nodes[x].kind == PQTree::Kind::Leaf) continue;
            gd.at[x] = hn++;
            if (nodes[x].kind == PQTree::Kind::Q) {
                const int k = static_cast<int>(nodes[x].nbrs.size());
                for (int j = 0; j < k; ++j) gd.rim[x].push_back(hn++);
                for (int j = 0; j < k; ++j) {
                    add(gd.rim[x][j], gd.rim[x][(j + 1) % k], {HEdge::Kind::Rim, v, x, j});
                    int sp = add(gd.at[x], gd.rim[x][j], {HEdge::Kind::Spoke, v, x, j});
                    if (j == 0) gd.spoke[x] = sp;
                }
            }
        }
        gadget_of[v] = static_cast<int>(gadgets.size());
        gadgets.push_back(std::move(gd));
    }
    // vertex of gadget g standing for tree node x toward neighbour y
    auto attach = [&](const Gadget& gd, int x, int y) {
        const auto& nd = gd.tree->nodes[x];
        if (nd.kind == PQTree::Kind::P) return gd.at[x];
        auto it = std::find(nd.nbrs.begin(), nd.nbrs.end(), y);
        return gd.rim[x][it - nd.nbrs.begin()];
    };
    for (const Gadget& gd : gadgets) {
        const auto& nodes = gd.tree->nodes;
        for (int x = 0; x < static_cast<int>(nodes.size()); ++x)
            for (int y : nodes[x].nbrs)
                if (x < y && nodes[y].kind != PQTree::Kind::Leaf && nodes[x].kind != PQTree::Kind::Leaf)
                    add(attach(gd, x, y), attach(gd, y, x), {HEdge::Kind::Tree, gd.v, x, y});
    }
    // endpoint of real edge e at local vertex w
    auto end_of = [&](int e, int w) {
        if (plain[w] >= 0) return plain[w];
        const Gadget& gd = gadgets[gadget_of[w]];
        int leaf = gd.tree->leaf_of(e);
        if (leaf < 0) throw StructureViolation("tree at a vertex misses an incident edge");
        int x = gd.tree->nodes[leaf].nbrs.at(0);
        return attach(gd, x, leaf);
    };
    std::vector<int> of_real(g.edges.size(), -1);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (!g.active[e]) continue;
        of_real[e] = add(end_of(e, g.edges[e][0]), end_of(e, g.edges[e][1]), {HEdge::Kind::Real, -1, e, -1});
    }

    SPQRTree t;
    try {
        t = build_spqr(hn, hedges);
    } catch (const NotBiconnected&) {
        throw InternalInconsistency("expanded graph is not biconnected");
    }
    std::vector<RotationSystem> emb;
    try {
        emb = default_skeleton_embeddings(t);
    } catch (const NotPlanar&) {
        return fail(Reason::NonPlanarExpansion);
    }

    // orientation of every Q gadget relative to its R-node's default embedding
    struct Wheel {
        int rnode, orient;
    };
    std::map<std::pair<int, int>, Wheel> wheels;  // (gadget, tree node)
    std::map<int, SPQRTree::Skeleton> skels;
    for (int gi = 0; gi < static_cast<int>(gadgets.size()); ++gi) {
        const Gadget& gd = gadgets[gi];
        const auto& nodes = gd.tree->nodes;
        for (int x = 0; x < static_cast<int>(nodes.size()); ++x) {
            if (nodes[x].kind != PQTree::Kind::Q) continue;
            int home = t.home(gd.spoke[x]);
            int r = home;
            if (t.nodes[home].type == SPQRTree::Type::Q) r = t.neighbors(home).at(0);
            if (t.nodes[r].type != SPQRTree::Type::R) throw InternalInconsistency("wheel outside a rigid node");
            auto sk_it = skels.find(r);
            if (sk_it == skels.end()) sk_it = skels.emplace(r, t.skeleton(r)).first;
            const SPQRTree::Skeleton& sk = sk_it->second;
            std::vector<int> seq;
            for (int d : emb[r].rot[sk.local(gd.at[x])]) {
                int h = t.real_of(r, d >> 1);
                if (h < 0 || info[h].kind != HEdge::Kind::Spoke) throw InternalInconsistency("hub edge is not a spoke");
                seq.push_back(info[h].b);
            }
            const int k = static_cast<int>(seq.size());
            auto start = std::find(seq.begin(), seq.end(), 0);
            std::rotate(seq.begin(), start, seq.end());
            std::vector<int> fwd(k);
            std::iota(fwd.begin(), fwd.end(), 0);
            int orient;
            if (seq == fwd) orient = 0;
            else if (k > 1 && std::equal(seq.begin() + 1, seq.end(), fwd.rbegin(), fwd.rbegin() + k - 1)) orient = 1;
            else throw InternalInconsistency("hub rotation is not the rim cycle");
            wheels[{gi, x}] = {r, orient};
        }
    }
    Parity par(static_cast<int>(t.nodes.size()));
    for (int gi = 0; gi < static_cast<int>(gadgets.size()); ++gi)
        for (auto [a, b] : gadgets[gi].tree->sync) {
            const Wheel& wa = wheels.at({gi, a});
            const Wheel& wb = wheels.at({gi, b});
            if (!par.join(wa.rnode, wb.rnode, wa.orient ^ wb.orient)) return fail(Reason::SynchronizationConflict);
        }
    for (int x : t.alive_nodes())
        if (t.nodes[x].type == SPQRTree::Type::R && par.find(x).second) mirror(emb[x]);
    RotationSystem h = compose_embedding(t, emb);

    RotationSystem out;
    out.n = g.n;
    out.ends = g.edges;
    out.rot.assign(g.n, {});
    auto real_dart = [&](int e, int w) { return 2 * e + (g.edges[e][0] == w ? 0 : 1); };
    for (int v = 0; v < g.n; ++v)
        if (plain[v] >= 0)
            for (int d : h.rot[plain[v]]) out.rot[v].push_back(real_dart(info[d >> 1].a, v));
    for (const Gadget& gd : gadgets) {
        const auto& nodes = gd.tree->nodes;
        // cyclic order of tree neighbours around node x
        auto around = [&](int x) {
            std::vector<int> r;
            if (nodes[x].kind == PQTree::Kind::Q) {
                for (int d : h.rot[gd.at[x]]) r.push_back(nodes[x].nbrs[info[d >> 1].b]);
                return r;
            }
            for (int d : h.rot[gd.at[x]]) {
                const HEdge& he = info[d >> 1];
                if (he.kind == HEdge::Kind::Tree) r.push_back(he.a == x ? he.b : he.a);
                else if (he.kind == HEdge::Kind::Real) r.push_back(gd.tree->leaf_of(he.a));
                else throw InternalInconsistency("unexpected edge at a tree vertex");
            }
            return r;
        };
        int root = -1;
        for (int x = 0; x < static_cast<int>(nodes.size()) && root < 0; ++x)
            if (nodes[x].kind != PQTree::Kind::Leaf) root = x;
        std::vector<int>& rv = out.rot[gd.v];
        std::function<void(int, int)> read = [&](int x, int from) {
            if (nodes[x].kind == PQTree::Kind::Leaf) {
                rv.push_back(real_dart(nodes[x].label, gd.v));
                return;
            }
            auto nb = around(x);
            int s = 0;
            if (from >= 0) s = static_cast<int>(std::find(nb.begin(), nb.end(), from) - nb.begin()) + 1;
            const int k = static_cast<int>(nb.size());
            for (int i = 0; i < k - (from >= 0 ? 1 : 0); ++i) read(nb[(s + i) % k], x);
        };
        read(root, -1);
        if (rv.size() != g.incident(gd.v).size()) throw InternalInconsistency("gadget contraction lost edges");
        if (!g.slot[gd.v].holds(detail::edges_of(rv)))
            throw InternalInconsistency("contracted rotation violates its tree");
    }
    return out;
}

}  // namespace satr
