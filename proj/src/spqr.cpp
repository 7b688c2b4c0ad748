#include "satr/spqr.hpp"

#include <algorithm>
#include <functional>
#include <list>
#include <memory>
#include <map>
#include <sstream>

#include "satr/stack.hpp"

namespace satr {

namespace {

// Triconnected components of a biconnected multigraph, following the
// path-search scheme of Hopcroft and Tarjan with the corrections of
// Gutwenger and Mutzel.  Vertex numbers in the search are 1-based.

enum class EType : char { Unseen, Tree, Frond, Removed };
enum class CType : char { Bond, Polygon, Tric };

struct Comp {
    std::list<int> edges;
    CType type = CType::Polygon;
    void finish_tric_or_poly(int e) {
        edges.push_back(e);
        type = edges.size() >= 4 ? CType::Tric : CType::Polygon;
    }
};

class Decomposer {
public:
    int n;
    std::vector<int> src, tgt, orig;
    std::vector<EType> type;
    std::vector<Comp> comps;
    std::vector<char> gone;  // virtual edges eliminated by assembly

    Decomposer(int n_, const std::vector<std::array<int, 2>>& edges) : n(n_) {
        for (size_t i = 0; i < edges.size(); ++i) new_edge(edges[i][0], edges[i][1], static_cast<int>(i));
        if (n <= 2) {
            int c = new_comp(CType::Bond);
            for (size_t i = 0; i < edges.size(); ++i) comps[c].edges.push_back(static_cast<int>(i));
            return;
        }
        split_multi_edges();
        inc.assign(n, {});
        for (int e = 0; e < edge_total(); ++e) {
            if (type[e] == EType::Removed) continue;
            inc[src[e]].push_back(e);
            inc[tgt[e]].push_back(e);
        }
        NUMBER.assign(n, 0);
        LOWPT1.assign(n, 0);
        LOWPT2.assign(n, 0);
        FATHER.assign(n, -1);
        ND.assign(n, 0);
        DEGREE.assign(n, 0);
        TREE_ARC.assign(n, -1);
        num_count = 0;
        start = 0;
        dfs1(start, -1);
        for (int e = 0; e < edge_total(); ++e) {
            if (type[e] == EType::Removed) continue;
            bool up = NUMBER[tgt[e]] - NUMBER[src[e]] > 0;
            if ((up && type[e] == EType::Frond) || (!up && type[e] == EType::Tree)) std::swap(src[e], tgt[e]);
        }
        A.assign(n, {});
        build_acceptable_adj();
        dfs2();
        TSh.assign(1, 0);
        TSa.assign(1, -1);
        TSb.assign(1, 0);
        top = 0;
        path_search(start);
        int c = new_comp(CType::Polygon);
        while (!ESTACK.empty()) {
            comps[c].edges.push_back(ESTACK.back());
            ESTACK.pop_back();
        }
        comps[c].type = comps[c].edges.size() > 4 ? CType::Tric : CType::Polygon;
        assemble();
    }

    int edge_total() const { return static_cast<int>(src.size()); }

private:
    std::vector<std::vector<int>> inc;
    std::vector<int> NUMBER, LOWPT1, LOWPT2, FATHER, ND, DEGREE, TREE_ARC, NODEAT, NEWNUM;
    std::vector<std::list<int>> A, HIGHPT;
    std::vector<std::list<int>::iterator> IN_ADJ, IN_HIGH;
    std::vector<char> high_valid, START;
    std::vector<int> TSh, TSa, TSb, ESTACK;
    int top = 0, num_count = 0, start = 0;
    bool new_path = true;

    int new_edge(int s, int t, int o = -1) {
        src.push_back(s);
        tgt.push_back(t);
        orig.push_back(o);
        type.push_back(EType::Unseen);
        IN_ADJ.emplace_back();
        IN_HIGH.emplace_back();
        high_valid.push_back(0);
        START.push_back(0);
        gone.push_back(0);
        return edge_total() - 1;
    }
    int new_comp(CType t) {
        comps.emplace_back();
        comps.back().type = t;
        return static_cast<int>(comps.size()) - 1;
    }

    void split_multi_edges() {
        int m = edge_total();
        std::vector<int> order(m);
        for (int i = 0; i < m; ++i) order[i] = i;
        auto key = [&](int e) { return std::make_pair(std::min(src[e], tgt[e]), std::max(src[e], tgt[e])); };
        std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
        for (int i = 0; i < m;) {
            int j = i;
            while (j < m && key(order[j]) == key(order[i])) ++j;
            if (j - i >= 2) {
                int c = new_comp(CType::Bond);
                int e0 = order[i];
                int ev = new_edge(src[e0], tgt[e0]);
                comps[c].edges.push_back(ev);
                for (int k = i; k < j; ++k) {
                    comps[c].edges.push_back(order[k]);
                    type[order[k]] = EType::Removed;
                }
            }
            i = j;
        }
    }

    void dfs1(int v, int u) {
        NUMBER[v] = ++num_count;
        FATHER[v] = u;
        DEGREE[v] = static_cast<int>(inc[v].size());
        LOWPT1[v] = LOWPT2[v] = NUMBER[v];
        ND[v] = 1;
        for (int e : inc[v]) {
            if (type[e] != EType::Unseen) continue;
            int w = src[e] == v ? tgt[e] : src[e];
            if (NUMBER[w] == 0) {
                type[e] = EType::Tree;
                TREE_ARC[w] = e;
                dfs1(w, v);
                if (LOWPT1[w] < LOWPT1[v]) {
                    LOWPT2[v] = std::min(LOWPT1[v], LOWPT2[w]);
                    LOWPT1[v] = LOWPT1[w];
                } else if (LOWPT1[w] == LOWPT1[v]) {
                    LOWPT2[v] = std::min(LOWPT2[v], LOWPT2[w]);
                } else {
                    LOWPT2[v] = std::min(LOWPT2[v], LOWPT1[w]);
                }
                ND[v] += ND[w];
            } else {
                type[e] = EType::Frond;
                if (NUMBER[w] < LOWPT1[v]) {
                    LOWPT2[v] = LOWPT1[v];
                    LOWPT1[v] = NUMBER[w];
                } else if (NUMBER[w] > LOWPT1[v]) {
                    LOWPT2[v] = std::min(LOWPT2[v], NUMBER[w]);
                }
            }
        }
    }

    void build_acceptable_adj() {
        int max = 3 * n + 2;
        std::vector<std::vector<int>> bucket(max + 1);
        for (int e = 0; e < edge_total(); ++e) {
            if (type[e] == EType::Removed) continue;
            int w = tgt[e];
            int phi = type[e] == EType::Frond ? 3 * NUMBER[w] + 1
                      : LOWPT2[w] < NUMBER[src[e]] ? 3 * LOWPT1[w]
                                                    : 3 * LOWPT1[w] + 2;
            bucket[phi].push_back(e);
        }
        for (int i = 1; i <= max; ++i)
            for (int e : bucket[i]) IN_ADJ[e] = A[src[e]].insert(A[src[e]].end(), e);
    }

    void path_finder(int v) {
        NEWNUM[v] = num_count - ND[v] + 1;
        for (int e : A[v]) {
            int w = tgt[e];
            if (new_path) {
                new_path = false;
                START[e] = 1;
            }
            if (type[e] == EType::Tree) {
                path_finder(w);
                --num_count;
            } else {
                IN_HIGH[e] = HIGHPT[w].insert(HIGHPT[w].end(), NEWNUM[v]);
                high_valid[e] = 1;
                new_path = true;
            }
        }
    }

    void dfs2() {
        NEWNUM.assign(n, 0);
        HIGHPT.assign(n, {});
        num_count = n;
        new_path = true;
        path_finder(start);
        std::vector<int> old2new(n + 1);
        for (int v = 0; v < n; ++v) old2new[NUMBER[v]] = NEWNUM[v];
        NODEAT.assign(n + 1, -1);
        for (int v = 0; v < n; ++v) {
            NODEAT[NEWNUM[v]] = v;
            LOWPT1[v] = old2new[LOWPT1[v]];
            LOWPT2[v] = old2new[LOWPT2[v]];
        }
    }

    int high(int v) const { return HIGHPT[v].empty() ? 0 : HIGHPT[v].front(); }
    void del_high(int e) {
        if (!high_valid[e]) return;
        HIGHPT[tgt[e]].erase(IN_HIGH[e]);
        high_valid[e] = 0;
    }
    void ts_push(int h, int a, int b) {
        ++top;
        if (top >= static_cast<int>(TSa.size())) {
            TSh.resize(top + 1);
            TSa.resize(top + 1);
            TSb.resize(top + 1);
        }
        TSh[top] = h;
        TSa[top] = a;
        TSb[top] = b;
    }
    void ts_push_eos() { ts_push(0, -1, 0); }
    bool ts_not_eos() const { return TSa[top] != -1; }
    int es_pop() {
        int e = ESTACK.back();
        ESTACK.pop_back();
        return e;
    }
    int first_child_num(int w) const { return A[w].empty() ? -1 : NEWNUM[tgt[A[w].front()]]; }

    void path_search(int v) {
        int vnum = NEWNUM[v];
        std::list<int>& adj = A[v];
        int outv = static_cast<int>(adj.size());
        for (auto it = adj.begin(); it != adj.end();) {
            auto it_next = std::next(it);
            int e = *it;
            int w = tgt[e];
            int wnum = NEWNUM[w];
            if (type[e] == EType::Tree) {
                if (START[e]) {
                    int y = 0, b = 0;
                    if (TSa[top] > LOWPT1[w]) {
                        do {
                            y = std::max(y, TSh[top]);
                            b = TSb[top--];
                        } while (TSa[top] > LOWPT1[w]);
                        ts_push(y, LOWPT1[w], b);
                    } else {
                        ts_push(wnum + ND[w] - 1, LOWPT1[w], vnum);
                    }
                    ts_push_eos();
                }
                path_search(w);
                ESTACK.push_back(TREE_ARC[w]);
                int x = -1;
                while (vnum != 1 && (TSa[top] == vnum || (DEGREE[w] == 2 && first_child_num(w) > wnum))) {
                    int a = TSa[top], b = TSb[top];
                    if (a == vnum && FATHER[NODEAT[b]] == NODEAT[a]) {
                        --top;
                        continue;
                    }
                    int e_ab = -1, e_virt;
                    if (DEGREE[w] == 2 && first_child_num(w) > wnum) {
                        int e1 = es_pop();
                        int e2 = es_pop();
                        A[w].erase(IN_ADJ[e2]);
                        x = tgt[e2];
                        e_virt = new_edge(v, x);
                        --DEGREE[x];
                        --DEGREE[v];
                        int c = new_comp(CType::Polygon);
                        comps[c].edges = {e1, e2, e_virt};
                        if (!ESTACK.empty()) {
                            int top_e = ESTACK.back();
                            if (src[top_e] == x && tgt[top_e] == v) {
                                e_ab = es_pop();
                                A[x].erase(IN_ADJ[e_ab]);
                                del_high(e_ab);
                            }
                        }
                    } else {
                        int h = TSh[top--];
                        int c = new_comp(CType::Polygon);
                        while (!ESTACK.empty()) {
                            int xy = ESTACK.back();
                            int xx = src[xy], yy = tgt[xy];
                            int nx = NEWNUM[xx], ny = NEWNUM[yy];
                            if (!(a <= nx && nx <= h && a <= ny && ny <= h)) break;
                            if ((nx == a && ny == b) || (ny == a && nx == b)) {
                                e_ab = es_pop();
                                A[src[e_ab]].erase(IN_ADJ[e_ab]);
                                del_high(e_ab);
                            } else {
                                int eh = es_pop();
                                if (!(src[eh] == v && IN_ADJ[eh] == it)) {
                                    A[src[eh]].erase(IN_ADJ[eh]);
                                    del_high(eh);
                                }
                                comps[c].edges.push_back(eh);
                                --DEGREE[xx];
                                --DEGREE[yy];
                            }
                        }
                        e_virt = new_edge(NODEAT[a], NODEAT[b]);
                        comps[c].finish_tric_or_poly(e_virt);
                        x = NODEAT[b];
                    }
                    if (e_ab >= 0) {
                        int c = new_comp(CType::Bond);
                        comps[c].edges = {e_ab, e_virt};
                        e_virt = new_edge(v, x);
                        comps[c].edges.push_back(e_virt);
                        --DEGREE[x];
                        --DEGREE[v];
                    }
                    ESTACK.push_back(e_virt);
                    *it = e_virt;
                    IN_ADJ[e_virt] = it;
                    ++DEGREE[x];
                    ++DEGREE[v];
                    FATHER[x] = v;
                    TREE_ARC[x] = e_virt;
                    type[e_virt] = EType::Tree;
                    w = x;
                    wnum = NEWNUM[w];
                }
                if (LOWPT2[w] >= vnum && LOWPT1[w] < vnum && (FATHER[v] != start || outv >= 2)) {
                    int c = new_comp(CType::Polygon);
                    int xn = 0, yn = 0;
                    while (!ESTACK.empty()) {
                        int xy = ESTACK.back();
                        xn = NEWNUM[src[xy]];
                        yn = NEWNUM[tgt[xy]];
                        if (!((wnum <= xn && xn < wnum + ND[w]) || (wnum <= yn && yn < wnum + ND[w]))) break;
                        comps[c].edges.push_back(es_pop());
                        del_high(xy);
                        --DEGREE[NODEAT[xn]];
                        --DEGREE[NODEAT[yn]];
                    }
                    int lw = NODEAT[LOWPT1[w]];
                    int e_virt = new_edge(v, lw);
                    comps[c].finish_tric_or_poly(e_virt);
                    if (!ESTACK.empty() && ((xn == vnum && yn == LOWPT1[w]) || (yn == vnum && xn == LOWPT1[w]))) {
                        int cb = new_comp(CType::Bond);
                        int eh = es_pop();
                        if (!(src[eh] == v && IN_ADJ[eh] == it)) A[src[eh]].erase(IN_ADJ[eh]);
                        comps[cb].edges = {eh, e_virt};
                        e_virt = new_edge(v, lw);
                        comps[cb].edges.push_back(e_virt);
                        IN_HIGH[e_virt] = IN_HIGH[eh];
                        high_valid[e_virt] = high_valid[eh];
                        --DEGREE[v];
                        --DEGREE[lw];
                    }
                    if (lw != FATHER[v]) {
                        ESTACK.push_back(e_virt);
                        *it = e_virt;
                        IN_ADJ[e_virt] = it;
                        if (!high_valid[e_virt] && high(lw) < vnum) {
                            HIGHPT[lw].push_front(vnum);
                            IN_HIGH[e_virt] = HIGHPT[lw].begin();
                            high_valid[e_virt] = 1;
                        }
                        ++DEGREE[v];
                        ++DEGREE[lw];
                    } else {
                        adj.erase(it);
                        int cb = new_comp(CType::Bond);
                        comps[cb].edges.push_back(e_virt);
                        e_virt = new_edge(lw, v);
                        comps[cb].edges.push_back(e_virt);
                        int eh = TREE_ARC[v];
                        comps[cb].edges.push_back(eh);
                        TREE_ARC[v] = e_virt;
                        type[e_virt] = EType::Tree;
                        IN_ADJ[e_virt] = IN_ADJ[eh];
                        *IN_ADJ[eh] = e_virt;
                    }
                }
                if (START[e]) {
                    while (ts_not_eos()) --top;
                    --top;
                }
                while (ts_not_eos() && TSb[top] != vnum && high(v) > TSh[top]) --top;
                --outv;
            } else {
                if (START[e]) {
                    int y = 0, b = 0;
                    if (TSa[top] > wnum) {
                        do {
                            y = std::max(y, TSh[top]);
                            b = TSb[top--];
                        } while (TSa[top] > wnum);
                        ts_push(y, wnum, b);
                    } else {
                        ts_push(vnum, wnum, vnum);
                    }
                }
                ESTACK.push_back(e);
            }
            it = it_next;
        }
    }

    // Merge adjacent bonds and adjacent polygons.
    void assemble() {
        int m = edge_total();
        int nc = static_cast<int>(comps.size());
        std::vector<int> comp1(m, -1), comp2(m, -1);
        std::vector<std::list<int>::iterator> item1(m), item2(m);
        for (int i = 0; i < nc; ++i) {
            for (auto it = comps[i].edges.begin(); it != comps[i].edges.end(); ++it) {
                int e = *it;
                if (comp1[e] < 0) {
                    comp1[e] = i;
                    item1[e] = it;
                } else {
                    comp2[e] = i;
                    item2[e] = it;
                }
            }
        }
        std::vector<char> visited(nc, 0);
        for (int i = 0; i < nc; ++i) {
            Comp& c1 = comps[i];
            visited[i] = 1;
            if (c1.edges.empty() || c1.type == CType::Tric) continue;
            for (auto it = c1.edges.begin(); it != c1.edges.end();) {
                auto it_next = std::next(it);
                int e = *it;
                if (orig[e] >= 0) {
                    it = it_next;
                    continue;
                }
                int j = comp1[e];
                std::list<int>::iterator it2;
                if (visited[j]) {
                    j = comp2[e];
                    if (j < 0 || visited[j]) {
                        it = it_next;
                        continue;
                    }
                    it2 = item2[e];
                } else {
                    it2 = item1[e];
                }
                Comp& c2 = comps[j];
                if (c2.type != c1.type) {
                    it = it_next;
                    continue;
                }
                visited[j] = 1;
                c2.edges.erase(it2);
                c1.edges.splice(c1.edges.end(), c2.edges);
                if (it_next == c1.edges.end()) it_next = std::next(it);
                c1.edges.erase(it);
                gone[e] = 1;
                it = it_next;
            }
        }
    }
};

// Connected over all n vertices with no cut vertex; iterative lowpoint DFS.
bool biconnected_impl(int n, const std::vector<std::array<int, 2>>& edges) {
    if (n == 0) return false;
    for (auto& e : edges)
        if (e[0] == e[1] || e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n) return false;
    if (n == 1) return false;
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (size_t i = 0; i < edges.size(); ++i) {
        adj[edges[i][0]].push_back({edges[i][1], static_cast<int>(i)});
        adj[edges[i][1]].push_back({edges[i][0], static_cast<int>(i)});
    }
    if (n == 2) return !edges.empty();
    std::vector<int> num(n, 0), low(n, 0), pe(n, -1);
    std::vector<size_t> pos(n, 0);
    int counter = 0, root_children = 0;
    std::vector<int> st{0};
    num[0] = low[0] = ++counter;
    while (!st.empty()) {
        int v = st.back();
        if (pos[v] < adj[v].size()) {
            auto [w, id] = adj[v][pos[v]++];
            if (id == pe[v]) continue;
            if (num[w] == 0) {
                num[w] = low[w] = ++counter;
                pe[w] = id;
                st.push_back(w);
                if (v == 0) ++root_children;
            } else {
                low[v] = std::min(low[v], num[w]);
            }
        } else {
            st.pop_back();
            if (!st.empty()) {
                int u = st.back();
                low[u] = std::min(low[u], low[v]);
                if (u != 0 && low[v] >= num[u]) return false;
            }
        }
    }
    return counter == n && root_children == 1;
}

}  // namespace

bool is_biconnected(int n, const std::vector<std::array<int, 2>>& edges) { return biconnected_impl(n, edges); }

SPQRTree build_spqr(int n, const std::vector<std::array<int, 2>>& edges) {
    if (!biconnected_impl(n, edges)) throw NotBiconnected("graph is not biconnected");
    SPQRTree t;
    t.n = n;
    t.real_ends = edges;
    if (edges.size() == 1) {
        SPQRTree::Node q;
        q.type = SPQRTree::Type::Q;
        q.edges.push_back({edges[0][0], edges[0][1], -1, -1, 0});
        t.nodes.push_back(q);
        t.reindex();
        return t;
    }
    std::unique_ptr<Decomposer> d;
    with_large_stack([&] { d = std::make_unique<Decomposer>(n, edges); });
    std::vector<std::vector<std::pair<int, int>>> occ(d->edge_total());
    for (auto& c : d->comps) {
        if (c.edges.empty()) continue;
        int id = static_cast<int>(t.nodes.size());
        t.nodes.emplace_back();
        t.nodes[id].type = c.type == CType::Bond      ? SPQRTree::Type::P
                           : c.type == CType::Polygon ? SPQRTree::Type::S
                                                      : SPQRTree::Type::R;
        for (int e : c.edges) {
            int idx = static_cast<int>(t.nodes[id].edges.size());
            SPQRTree::SkelEdge se;
            se.u = d->src[e];
            se.v = d->tgt[e];
            t.nodes[id].edges.push_back(se);
            if (d->orig[e] >= 0) {
                int q = static_cast<int>(t.nodes.size());
                t.nodes.emplace_back();
                t.nodes[q].type = SPQRTree::Type::Q;
                int r = d->orig[e];
                t.nodes[q].edges.push_back({edges[r][0], edges[r][1], id, idx, -1});
                t.nodes[q].edges.push_back({edges[r][0], edges[r][1], -1, -1, r});
                t.nodes[id].edges[idx].twin_node = q;
                t.nodes[id].edges[idx].twin_edge = 0;
            } else {
                occ[e].push_back({id, idx});
            }
        }
    }
    for (auto& o : occ) {
        if (o.empty()) continue;
        if (o.size() != 2) throw std::logic_error("spqr: virtual edge without a twin");
        auto& a = t.nodes[o[0].first].edges[o[0].second];
        auto& b = t.nodes[o[1].first].edges[o[1].second];
        a.twin_node = o[1].first;
        a.twin_edge = o[1].second;
        b.twin_node = o[0].first;
        b.twin_edge = o[0].second;
    }
    t.reindex();
    return t;
}

SPQRTree build_spqr(const Graph& g) {
    std::vector<std::array<int, 2>> e;
    e.reserve(g.edges.size());
    for (auto& x : g.edges) e.push_back({x.u, x.v});
    return build_spqr(g.vertex_count(), e);
}

std::vector<int> SPQRTree::alive_nodes() const {
    std::vector<int> r;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (nodes[i].alive) r.push_back(i);
    return r;
}

std::vector<int> SPQRTree::neighbors(int node) const {
    std::vector<int> r;
    for (auto& e : nodes[node].edges)
        if (e.is_virtual()) r.push_back(e.twin_node);
    return r;
}

std::vector<int> SPQRTree::skeleton_vertices(int node) const {
    std::vector<int> r;
    for (auto& e : nodes[node].edges) {
        r.push_back(e.u);
        r.push_back(e.v);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

int SPQRTree::real_of(int node, int e) const {
    const SkelEdge& s = nodes[node].edges[e];
    if (!s.is_virtual()) return s.real;
    const Node& tw = nodes[s.twin_node];
    if (tw.type == Type::Q) {
        for (auto& x : tw.edges)
            if (!x.is_virtual()) return x.real;
    }
    return -1;
}

int SPQRTree::Skeleton::local(int v) const {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    if (it == verts.end() || *it != v) return -1;
    return static_cast<int>(it - verts.begin());
}

SPQRTree::Skeleton SPQRTree::skeleton(int node) const {
    Skeleton s;
    s.verts = skeleton_vertices(node);
    for (auto& e : nodes[node].edges) s.ends.push_back({s.local(e.u), s.local(e.v)});
    return s;
}

void SPQRTree::reindex() {
    int nn = static_cast<int>(nodes.size());
    parent_.assign(nn, -1);
    tin_.assign(nn, -1);
    tout_.assign(nn, -1);
    home_.assign(real_ends.size(), -1);
    int root = -1;
    for (int i = 0; i < nn; ++i)
        if (nodes[i].alive) {
            root = i;
            break;
        }
    if (root >= 0) {
        int timer = 0;
        std::vector<std::pair<int, size_t>> st{{root, 0}};
        tin_[root] = timer++;
        while (!st.empty()) {
            auto& [x, p] = st.back();
            if (p < nodes[x].edges.size()) {
                const SkelEdge& e = nodes[x].edges[p++];
                if (!e.is_virtual() || e.twin_node == parent_[x] || tin_[e.twin_node] >= 0) continue;
                int y = e.twin_node;
                parent_[y] = x;
                tin_[y] = timer++;
                st.push_back({y, 0});
            } else {
                tout_[x] = timer - 1;
                st.pop_back();
            }
        }
    }
    for (int i = 0; i < nn; ++i) {
        if (!nodes[i].alive) continue;
        for (auto& e : nodes[i].edges)
            if (!e.is_virtual() && e.real >= 0) home_[e.real] = i;
    }
    tins_at_.assign(n, {});
    for (size_t r = 0; r < real_ends.size(); ++r) {
        if (home_[r] < 0) continue;
        tins_at_[real_ends[r][0]].push_back(tin_[home_[r]]);
        tins_at_[real_ends[r][1]].push_back(tin_[home_[r]]);
    }
    for (auto& v : tins_at_) std::sort(v.begin(), v.end());
}

int SPQRTree::count_in(int v, int lo, int hi) const {
    const auto& a = tins_at_[v];
    return static_cast<int>(std::upper_bound(a.begin(), a.end(), hi) - std::lower_bound(a.begin(), a.end(), lo));
}

std::vector<std::pair<int, int>> SPQRTree::edge_loads(int node, int v) const {
    std::vector<std::pair<int, int>> r;
    const auto& es = nodes[node].edges;
    for (int i = 0; i < static_cast<int>(es.size()); ++i) {
        const SkelEdge& e = es[i];
        if (e.u != v && e.v != v) continue;
        int load;
        if (!e.is_virtual()) {
            load = 1;
        } else if (parent_[e.twin_node] == node) {
            load = count_in(v, tin_[e.twin_node], tout_[e.twin_node]);
        } else {
            load = static_cast<int>(tins_at_[v].size()) - count_in(v, tin_[node], tout_[node]);
        }
        r.push_back({i, load});
    }
    if (r.empty()) throw VertexNotInSkeleton("vertex " + std::to_string(v) + " not in skeleton");
    return r;
}

std::vector<int> SPQRTree::all_edges_behind(int node, int e) const {
    std::vector<int> r;
    const SkelEdge& s = nodes[node].edges[e];
    if (!s.is_virtual()) return {s.real};
    std::vector<std::pair<int, int>> st{{s.twin_node, node}};
    while (!st.empty()) {
        auto [x, from] = st.back();
        st.pop_back();
        for (auto& f : nodes[x].edges) {
            if (!f.is_virtual()) {
                if (f.real >= 0) r.push_back(f.real);
            } else if (f.twin_node != from) {
                st.push_back({f.twin_node, x});
            }
        }
    }
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<int> SPQRTree::edges_behind(int node, int e, int v) const {
    std::vector<int> r;
    for (int x : all_edges_behind(node, e))
        if (real_ends[x][0] == v || real_ends[x][1] == v) r.push_back(x);
    return r;
}

std::vector<int> distribution_vector(const SPQRTree& t, int node, int v) {
    std::vector<int> d;
    for (auto& [e, load] : t.edge_loads(node, v)) d.push_back(load);
    std::sort(d.rbegin(), d.rend());
    return d;
}

void merge_nodes(SPQRTree& t, int mu, int nu) {
    if (mu == nu || !t.nodes[mu].alive || !t.nodes[nu].alive) throw NotAdjacent("merge: bad nodes");
    int em = -1;
    for (int i = 0; i < static_cast<int>(t.nodes[mu].edges.size()); ++i)
        if (t.nodes[mu].edges[i].twin_node == nu) em = i;
    if (em < 0) throw NotAdjacent("merge: nodes are not adjacent");
    using Type = SPQRTree::Type;
    Type tm = t.nodes[mu].type, tn = t.nodes[nu].type;
    int en = t.nodes[mu].edges[em].twin_edge;
    auto remove_edge = [&](int node, int idx) {
        auto& es = t.nodes[node].edges;
        int last = static_cast<int>(es.size()) - 1;
        if (idx != last) {
            es[idx] = es[last];
            if (es[idx].is_virtual()) t.nodes[es[idx].twin_node].edges[es[idx].twin_edge].twin_edge = idx;
        }
        es.pop_back();
    };
    remove_edge(mu, em);
    remove_edge(nu, en);
    for (auto& e : t.nodes[nu].edges) {
        int idx = static_cast<int>(t.nodes[mu].edges.size());
        t.nodes[mu].edges.push_back(e);
        if (e.is_virtual()) {
            auto& tw = t.nodes[e.twin_node].edges[e.twin_edge];
            tw.twin_node = mu;
            tw.twin_edge = idx;
        }
    }
    t.nodes[nu].edges.clear();
    t.nodes[nu].alive = false;
    Type merged;
    if (tn == Type::Q) merged = tm;
    else if (tm == Type::Q) merged = tn;
    else if (tm == tn && tm != Type::R) merged = tm;
    else merged = Type::R;
    t.nodes[mu].type = merged;
    t.reindex();
}

void SPQRTree::check() const {
    auto fail = [](const std::string& m) { throw std::logic_error("spqr: " + m); };
    auto alive = alive_nodes();
    int non_q = 0;
    for (int x : alive)
        if (nodes[x].type != Type::Q) ++non_q;
    std::vector<int> seen(real_ends.size(), 0);
    int adjacencies = 0;
    for (int x : alive) {
        const Node& nd = nodes[x];
        for (int i = 0; i < static_cast<int>(nd.edges.size()); ++i) {
            const SkelEdge& e = nd.edges[i];
            if (e.u == e.v) fail("loop in skeleton");
            if (e.is_virtual()) {
                if (!nodes[e.twin_node].alive) fail("twin in dead node");
                const SkelEdge& f = nodes[e.twin_node].edges.at(e.twin_edge);
                if (f.twin_node != x || f.twin_edge != i) fail("asymmetric twins");
                if (std::minmax(e.u, e.v) != std::minmax(f.u, f.v)) fail("twin endpoints differ");
                ++adjacencies;
                Type a = nd.type, b = nodes[e.twin_node].type;
                if (a == b && (a == Type::S || a == Type::P)) fail("adjacent nodes of the same series/parallel type");
            } else {
                if (e.real < 0 || e.real >= static_cast<int>(real_ends.size())) fail("bad real edge");
                if (std::minmax(e.u, e.v) != std::minmax(real_ends[e.real][0], real_ends[e.real][1]))
                    fail("real edge endpoints differ");
                ++seen[e.real];
            }
        }
        auto verts = skeleton_vertices(x);
        int nv = static_cast<int>(verts.size()), ne = static_cast<int>(nd.edges.size());
        Skeleton sk = skeleton(x);
        std::vector<int> deg(nv, 0);
        for (auto& e : sk.ends) {
            ++deg[e[0]];
            ++deg[e[1]];
        }
        switch (nd.type) {
            case Type::Q:
                if (nv != 2 || ne < 1 || ne > 2) fail("bad Q skeleton");
                break;
            case Type::P:
                if (nv != 2) fail("P skeleton needs two poles");
                if (ne < 3 && non_q > 1) fail("P skeleton needs three edges");
                break;
            case Type::S:
                if (ne != nv || nv < 3) fail("S skeleton is not a cycle");
                for (int d : deg)
                    if (d != 2) fail("S skeleton is not a cycle");
                if (!is_biconnected(nv, sk.ends)) fail("S skeleton is not a cycle");
                break;
            case Type::R: {
                if (nv < 4) fail("R skeleton too small");
                std::vector<std::pair<int, int>> simple;
                for (auto& e : sk.ends) simple.push_back(std::minmax(e[0], e[1]));
                std::sort(simple.begin(), simple.end());
                if (std::adjacent_find(simple.begin(), simple.end()) != simple.end()) fail("R skeleton not simple");
                if (nv <= 60) {
                    for (int a = 0; a < nv; ++a)
                        for (int b = a + 1; b < nv; ++b) {
                            std::vector<int> idx(nv, -1);
                            int k = 0;
                            for (int c = 0; c < nv; ++c)
                                if (c != a && c != b) idx[c] = k++;
                            std::vector<std::array<int, 2>> rest;
                            for (auto& e : sk.ends)
                                if (idx[e[0]] >= 0 && idx[e[1]] >= 0) rest.push_back({idx[e[0]], idx[e[1]]});
                            // connectivity of the rest
                            std::vector<int> comp(k);
                            for (int c = 0; c < k; ++c) comp[c] = c;
                            std::function<int(int)> find = [&](int c) { return comp[c] == c ? c : comp[c] = find(comp[c]); };
                            int parts = k;
                            for (auto& e : rest) {
                                int p = find(e[0]), q = find(e[1]);
                                if (p != q) {
                                    comp[p] = q;
                                    --parts;
                                }
                            }
                            if (parts != 1) fail("R skeleton has a separation pair");
                        }
                }
                break;
            }
        }
    }
    for (size_t r = 0; r < seen.size(); ++r)
        if (seen[r] != 1) fail("real edge " + std::to_string(r) + " appears " + std::to_string(seen[r]) + " times");
    if (adjacencies / 2 != static_cast<int>(alive.size()) - 1) fail("node graph is not a tree");
}

std::string SPQRTree::dump() const {
    static const char* names = "SPQR";
    std::ostringstream os;
    for (int x : alive_nodes()) {
        const Node& nd = nodes[x];
        os << "node " << x << ' ' << names[static_cast<int>(nd.type)] << ':';
        for (auto& e : nd.edges) {
            os << ' ' << e.u << '-' << e.v;
            if (e.is_virtual()) os << "~" << e.twin_node;
            else os << "=e" << e.real;
        }
        os << '\n';
    }
    return os.str();
}

RotationSystem skeleton_embedding(const SPQRTree& t, int node) {
    using Type = SPQRTree::Type;
    SPQRTree::Skeleton sk = t.skeleton(node);
    RotationSystem r;
    r.n = static_cast<int>(sk.verts.size());
    r.ends = sk.ends;
    r.rot.assign(r.n, {});
    Type ty = t.nodes[node].type;
    if (ty == Type::R) {
        auto e = embed_edges(r.n, sk.ends);
        if (!e) throw NotPlanar("skeleton is not planar");
        return *e;
    }
    for (int i = 0; i < r.edge_count(); ++i) {
        r.rot[sk.ends[i][0]].push_back(2 * i);
        r.rot[sk.ends[i][1]].push_back(2 * i + 1);
    }
    if (ty == Type::P && r.n == 2) std::reverse(r.rot[1].begin(), r.rot[1].end());
    return r;
}

std::vector<RotationSystem> default_skeleton_embeddings(const SPQRTree& t) {
    std::vector<RotationSystem> r(t.nodes.size());
    for (int x : t.alive_nodes()) r[x] = skeleton_embedding(t, x);
    return r;
}

RotationSystem compose_embedding(const SPQRTree& t, const std::vector<RotationSystem>& emb) {
    RotationSystem out;
    out.n = t.n;
    out.ends = t.real_ends;
    out.rot.assign(t.n, {});
    // local vertex index and dart positions per node
    std::vector<std::vector<int>> verts(t.nodes.size());
    std::vector<std::vector<int>> pos(t.nodes.size());
    for (int x : t.alive_nodes()) {
        verts[x] = t.skeleton_vertices(x);
        pos[x].assign(2 * emb[x].edge_count(), -1);
        for (auto& rv : emb[x].rot)
            for (int i = 0; i < static_cast<int>(rv.size()); ++i) pos[x][rv[i]] = i;
    }
    auto local = [&](int x, int v) {
        auto it = std::lower_bound(verts[x].begin(), verts[x].end(), v);
        return static_cast<int>(it - verts[x].begin());
    };
    std::vector<char> done(t.n, 0);
    for (size_t r = 0; r < t.real_ends.size(); ++r) {
        for (int s = 0; s < 2; ++s) {
            int v = t.real_ends[r][s];
            if (done[v]) continue;
            done[v] = 1;
            // start at the node holding the real edge
            int x0 = t.home(static_cast<int>(r));
            struct Frame {
                int node, lv, start, k, len;
            };
            std::vector<Frame> st;
            int lv0 = local(x0, v);
            st.push_back({x0, lv0, 0, 0, static_cast<int>(emb[x0].rot[lv0].size())});
            while (!st.empty()) {
                Frame& f = st.back();
                if (f.k == f.len) {
                    st.pop_back();
                    continue;
                }
                const auto& rv = emb[f.node].rot[f.lv];
                int d = rv[(f.start + f.k) % rv.size()];
                ++f.k;
                const SPQRTree::SkelEdge& e = t.nodes[f.node].edges[d >> 1];
                if (!e.is_virtual()) {
                    out.rot[v].push_back(2 * e.real + (t.real_ends[e.real][0] == v ? 0 : 1));
                    continue;
                }
                int y = e.twin_node;
                int ly = local(y, v);
                const auto& ey = emb[y].ends[e.twin_edge];
                int dy = 2 * e.twin_edge + (ey[0] == ly ? 0 : 1);
                int p = pos[y][dy];
                int len = static_cast<int>(emb[y].rot[ly].size());
                st.push_back({y, ly, p + 1, 0, len - 1});
            }
        }
    }
    return out;
}

}  // namespace satr
