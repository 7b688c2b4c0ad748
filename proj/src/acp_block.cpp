#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

#include "acp_internal.hpp"

namespace satr {

using namespace detail;

Slot Slot::of(AlternationConstraint c) {
    Slot s;
    s.kind = Kind::Alt;
    s.alt = std::move(c);
    return s;
}

Slot Slot::of(PQTree t) {
    Slot s;
    s.kind = Kind::PQ;
    s.tree = std::move(t);
    return s;
}

bool Slot::holds(const std::vector<int>& rotation) const {
    switch (kind) {
        case Kind::None: return true;
        case Kind::Alt: return alt.holds(rotation);
        case Kind::PQ: return is_compatible(tree, rotation);
    }
    return false;
}

int GACP::add_vertex(int global) {
    vid.push_back(global);
    slot.emplace_back();
    inc.emplace_back();
    return n++;
}

int GACP::add_edge(int u, int v, int global) {
    int id = static_cast<int>(edges.size());
    edges.push_back({u, v});
    active.push_back(1);
    eid.push_back(global);
    inc[u].push_back(id);
    inc[v].push_back(id);
    return id;
}

std::vector<int> GACP::incident(int v) const {
    std::vector<int> r;
    for (int e : inc[v])
        if (active[e]) r.push_back(e);
    return r;
}

namespace {

// A step of the reduction, kept so the final embedding can be repaired.
struct Entry {
    enum class Type { Reorder, SNode, Surgery };
    Type type = Type::Reorder;
    std::vector<PFrame> frames;
    std::vector<std::pair<int, Slot>> checks;  // slots to re-establish, per vertex
    int detached_child = -1;
    std::vector<int> detached;                  // edges split off by surgery
    std::map<int, std::vector<int>> sub_rot;    // their rotations, darts of this block
};

Entry reorder_entry(const PFrame& f, std::vector<std::pair<int, Slot>> checks) {
    Entry e;
    e.frames = {f};
    e.checks = std::move(checks);
    return e;
}

enum class Step { Same, Changed, No };

bool adjacent_in(const CircularOrder& o, int a, int b) {
    const int k = static_cast<int>(o.size());
    for (int i = 0; i < k; ++i) {
        int x = o[i], y = o[(i + 1) % k];
        if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
}

std::vector<int> sorted_sizes(const std::vector<std::vector<int>>& groups) {
    std::vector<int> d;
    for (auto& g : groups) d.push_back(static_cast<int>(g.size()));
    std::sort(d.rbegin(), d.rend());
    return d;
}

// Current runs of each child's darts around its poles.
struct Blocks {
    std::vector<std::vector<int>> at_v, at_u;
};

std::vector<std::vector<int>> runs_at(const std::vector<int>& rot, const std::vector<std::vector<int>>& groups,
                                      std::vector<int>* order) {
    std::map<int, int> child;
    size_t total = 0;
    for (int c = 0; c < static_cast<int>(groups.size()); ++c)
        for (int e : groups[c]) {
            child[e] = c;
            ++total;
        }
    if (rot.size() != total) throw InternalInconsistency("rotation does not match the P-node children");
    const int k = static_cast<int>(rot.size());
    auto who = [&](int i) {
        auto it = child.find(rot[((i % k) + k) % k] >> 1);
        if (it == child.end()) throw InternalInconsistency("dart outside the P-node children");
        return it->second;
    };
    int start = 0;
    while (start < k && who(start) == who(start - 1)) ++start;
    if (start == k) start = 0;  // a single child
    std::vector<std::vector<int>> runs(groups.size());
    std::vector<char> seen(groups.size(), 0);
    for (int i = 0; i < k; ++i) {
        int c = who(start + i);
        if (i > 0 && c != who(start + i - 1) && seen[c]) throw InternalInconsistency("child darts are not consecutive");
        if (!seen[c]) {
            seen[c] = 1;
            if (order) order->push_back(c);
        }
        runs[c].push_back(rot[(start + i) % k]);
    }
    return runs;
}

bool same_cycle(std::vector<int> a, std::vector<int> b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    auto it = std::find(b.begin(), b.end(), a[0]);
    if (it == b.end()) return false;
    std::rotate(b.begin(), it, b.end());
    return a == b;
}

class Repair {
public:
    explicit Repair(RotationSystem& r) : rot_(r) {}

    Blocks read(const PFrame& f) const {
        std::vector<int> ov, ou;
        Blocks b;
        b.at_v = runs_at(rot_.rot[f.v], f.at_v, &ov);
        b.at_u = runs_at(rot_.rot[f.u], f.at_u, &ou);
        std::reverse(ou.begin(), ou.end());
        if (!same_cycle(ov, ou)) throw InternalInconsistency("P-node children not mirrored at the poles");
        return b;
    }

    static std::pair<std::vector<int>, std::vector<int>> compose(const Blocks& b, const std::vector<int>& order,
                                                                 unsigned mask) {
        std::vector<int> rv, ru;
        for (int c : order) {
            auto run = b.at_v[c];
            if (mask >> c & 1) std::reverse(run.begin(), run.end());
            rv.insert(rv.end(), run.begin(), run.end());
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            auto run = b.at_u[*it];
            if (mask >> *it & 1) std::reverse(run.begin(), run.end());
            ru.insert(ru.end(), run.begin(), run.end());
        }
        return {rv, ru};
    }

    void apply(const PFrame& f, const Blocks& b, const std::vector<int>& order, unsigned mask) {
        auto [rv, ru] = compose(b, order, mask);
        rot_.rot[f.v] = rv;
        rot_.rot[f.u] = ru;
        for (int c = 0; c < f.size(); ++c)
            if (mask >> c & 1) mirror_inside(f, c);
    }

    // Reorder (and possibly flip) the children so every check holds.
    bool search(const PFrame& f, const std::vector<std::pair<int, Slot>>& checks) {
        Blocks b = read(f);
        unsigned flip = 0;
        for (int c = 0; c < f.size(); ++c)
            if (f.flippable[c]) flip |= 1u << c;
        for (auto& order : cyclic_orders(f.size())) {
            for (unsigned mask = 0;; mask = (mask - flip) & flip) {
                auto [rv, ru] = compose(b, order, mask);
                bool ok = true;
                for (auto& [w, s] : checks) {
                    if (w == f.v) ok = ok && s.holds(edges_of(rv));
                    else if (w == f.u) ok = ok && s.holds(edges_of(ru));
                }
                if (ok) {
                    apply(f, b, order, mask);
                    return true;
                }
                if (((mask - flip) & flip) == 0) break;
            }
        }
        return false;
    }

    bool holds(int w, const Slot& s) const { return s.holds(edges_of(rot_.rot[w])); }

private:
    RotationSystem& rot_;

    void mirror_inside(const PFrame& f, int c) {
        std::vector<int> stack;
        std::set<int> seen{f.v, f.u};
        for (int e : f.at_v[c]) {
            int w = rot_.ends[e][0] == f.v ? rot_.ends[e][1] : rot_.ends[e][0];
            if (seen.insert(w).second) stack.push_back(w);
        }
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            std::reverse(rot_.rot[w].begin(), rot_.rot[w].end());
            for (int d : rot_.rot[w]) {
                int x = rot_.vertex_of(d ^ 1);
                if (seen.insert(x).second) stack.push_back(x);
            }
        }
    }
};

class BlockSolver {
public:
    BlockSolver(GACP g, Trace* trace) : g_(std::move(g)), trace_(trace) {}

    std::optional<RotationSystem> run(Reason* why);

private:
    GACP g_;
    Trace* trace_;
    std::vector<Entry> log_;
    std::unique_ptr<TreeView> tv_;
    std::deque<int> queue_;
    std::vector<char> queued_;
    Reason fail_ = Reason::None;

    void note(const char* lemma, int v, const std::string& action) {
        if (!trace_) return;
        std::ostringstream os;
        os << "LEMMA " << lemma << " vertex=" << g_.vid[v] << " action=" << action;
        trace_->push_back(os.str());
    }
    Step no(Reason r) {
        fail_ = r;
        return Step::No;
    }
    void push(int v) {
        if (g_.slot[v].kind == Slot::Kind::Alt && !queued_[v]) {
            queued_[v] = 1;
            queue_.push_back(v);
        }
    }
    void push_partners(int v) {
        push(v);
        if (!tv_->has(v)) return;
        for (int x : tv_->nodes_at(v))
            if (tv_->t.nodes[x].type == SPQRTree::Type::P) {
                auto [a, b] = tv_->poles(x);
                push(a == v ? b : a);
            }
    }
    void rebuild() { tv_ = std::make_unique<TreeView>(g_); }

    Step process(int v);
    Step replace(int v, const std::vector<std::pair<int, int>>& pairs, const char* lemma);
    Step all_ones(const PFrame& f);
    Step p3_3111(const PFrame& f);
    Step free_or_pq(const PFrame& f);
    Step two_alternation(int node, const PFrame& f);
    Step surgery(int node, const PFrame& f, int multi);
    Step snode(int node);
    void replay(RotationSystem& rot);
};

Step BlockSolver::replace(int v, const std::vector<std::pair<int, int>>& pairs, const char* lemma) {
    PairReplacement r = replace_with_pairs(g_.slot[v].alt, pairs);
    switch (r.status) {
        case PairReplacement::Status::No:
            note(lemma, v, "reject");
            return no(Reason::ConstraintConflict);
        case PairReplacement::Status::Tree:
            note(lemma, v, std::string("tree:") + pattern_name(r.pattern));
            g_.slot[v] = Slot::of(r.tree);
            return Step::Changed;
        case PairReplacement::Status::NotApplicable: break;
    }
    return Step::Same;
}

Step BlockSolver::process(int v) {
    if (g_.slot[v].kind != Slot::Kind::Alt || !tv_->has(v)) return Step::Same;
    const AlternationConstraint& c = g_.slot[v].alt;
    if (c.darts.size() == 4) {
        note("deg4", v, std::string("tree:") + ckind_name(c.kind));
        g_.slot[v] = Slot::of(deg4_tree(c));
        return Step::Changed;
    }
    auto pairs = consecutive_pairs_in(*tv_, g_, v);
    if (!pairs.empty()) {
        Step s = replace(v, pairs, "pairs");
        if (s != Step::Same) return s;
    }
    for (int x : tv_->nodes_at(v)) {
        if (tv_->t.nodes[x].type != SPQRTree::Type::P) continue;
        PFrame f = make_frame(*tv_, x, v);
        auto dist = sorted_sizes(f.at_v);
        Slot::Kind uk = g_.slot[f.u].kind;
        Step s = Step::Same;
        if (dist.front() == 1) {
            s = all_ones(f);
        } else if (dist == std::vector<int>{3, 1, 1, 1}) {
            if (c.kind == CKind::P3) s = p3_3111(f);
            else if (c.kind == CKind::K3 && uk != Slot::Kind::Alt) s = free_or_pq(f);
        } else if (dist == std::vector<int>{2, 1, 1, 1} && c.kind == CKind::K3minusR) {
            s = uk != Slot::Kind::Alt ? free_or_pq(f) : two_alternation(x, f);
        }
        if (s != Step::Same) return s;
    }
    return Step::Same;
}

Step BlockSolver::all_ones(const PFrame& f) {
    Slot& sv = g_.slot[f.v];
    Slot& su = g_.slot[f.u];
    const int k = f.size();
    if (su.kind == Slot::Kind::None) {
        log_.push_back(reorder_entry(f, {{f.v, sv}}));
        note("allones", f.v, "drop");
        sv = Slot::none();
        return Step::Changed;
    }
    int multi = -1;
    for (int c = 0; c < k; ++c) {
        if (f.at_u[c].size() > 2) return Step::Same;
        if (f.at_u[c].size() == 2) {
            if (multi >= 0) return Step::Same;
            multi = c;
        }
    }
    // a second pole with a two-edge child still has a pair of its own to resolve
    if (su.kind == Slot::Kind::Alt && multi >= 0) return Step::Same;
    for (auto& order : cyclic_orders(k)) {
        for (int flip = 0; flip < (multi >= 0 ? 2 : 1); ++flip) {
            std::vector<int> rv, ru;
            for (int c : order) rv.push_back(f.at_v[c][0]);
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                auto run = f.at_u[*it];
                if (flip && *it == multi) std::reverse(run.begin(), run.end());
                ru.insert(ru.end(), run.begin(), run.end());
            }
            if (!sv.holds(rv) || !su.holds(ru)) continue;
            PFrame g = f;
            if (multi >= 0) g.flippable[multi] = 1;
            log_.push_back(reorder_entry(g, {{f.v, sv}, {f.u, su}}));
            if (su.kind == Slot::Kind::Alt) {
                note("allones", f.v, "drop-both");
                su = Slot::none();
            } else {
                note("allones", f.v, "drop");
            }
            sv = Slot::none();
            return Step::Changed;
        }
    }
    note("allones", f.v, "reject");
    return no(Reason::ConstraintConflict);
}

Step BlockSolver::p3_3111(const PFrame& f) {
    const AlternationConstraint& c = g_.slot[f.v].alt;
    std::vector<int> grp;
    for (auto& g : f.at_v)
        if (g.size() == 3) grp = g;
    std::vector<int> purple, rest;
    for (int d : grp) (c.color_of(d) == Color::Purple ? purple : rest).push_back(d);
    if (purple.size() != 1) {
        note("3111-P3", f.v, "reject");
        return no(Reason::ConstraintConflict);
    }
    std::vector<std::pair<int, int>> pairs;
    if (c.color_of(rest[0]) != c.color_of(rest[1])) pairs = {{rest[0], rest[1]}};
    else pairs = {{purple[0], rest[0]}, {purple[0], rest[1]}};
    Step s = replace(f.v, pairs, "3111-P3");
    if (s == Step::Same) throw StructureViolation("P3 pair replacement not applicable");
    return s;
}

Step BlockSolver::free_or_pq(const PFrame& f) {
    Slot& sv = g_.slot[f.v];
    const AlternationConstraint& c = sv.alt;
    const int k = f.size();
    int m = -1;
    for (int i = 0; i < k; ++i)
        if (f.at_v[i].size() > 1) m = i;
    std::set<Color> cols;
    for (int d : f.at_v[m]) cols.insert(c.color_of(d));
    if (cols.size() != f.at_v[m].size()) {
        note("3111-free", f.v, "reject");
        return no(Reason::ConstraintConflict);
    }
    if (c.kind == CKind::K3minusR && cols.count(Color::Red))
        throw StructureViolation("red dart in a pair that should have been replaced");
    Slot& su = g_.slot[f.u];
    if (su.kind == Slot::Kind::None) {
        log_.push_back(reorder_entry(f, {{f.v, sv}}));
        note("3111-free", f.v, "drop");
        sv = Slot::none();
        return Step::Changed;
    }
    // orders at u that keep every child together, seen on one edge per child
    std::vector<int> reps;
    std::set<int> keep;
    for (auto& g : f.at_u) {
        reps.push_back(g[0]);
        keep.insert(g[0]);
    }
    std::set<CircularOrder> seen;
    for (auto& o : enumerate_orders(su.tree)) {
        bool ok = true;
        for (auto& g : f.at_u) ok = ok && consecutive_in(o, {g.begin(), g.end()});
        if (ok) seen.insert(project_order(o, keep));
    }
    if (seen.empty()) {
        note("3111-pq", f.v, "reject");
        return no(Reason::ConstraintConflict);
    }
    if (seen.size() == all_circular_orders(reps).size()) {
        log_.push_back(reorder_entry(f, {{f.v, sv}, {f.u, su}}));
        note("3111-pq", f.v, "drop");
        sv = Slot::none();
        return Step::Changed;
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (i == m || j == m) continue;
            bool always = true;
            for (auto& o : seen) always = always && adjacent_in(o, reps[i], reps[j]);
            if (!always) continue;
            std::vector<std::pair<int, int>> pairs{{f.at_v[i][0], f.at_v[j][0]}};
            if (f.at_v[m].size() == 2) pairs.push_back({f.at_v[m][0], f.at_v[m][1]});
            Step s = replace(f.v, pairs, "3111-pq");
            if (s == Step::Same) throw StructureViolation("pair replacement not applicable");
            return s;
        }
    throw StructureViolation("restricted tree forces no pair");
}

Step BlockSolver::two_alternation(int node, const PFrame& f) {
    const Slot& su = g_.slot[f.u];
    auto du = sorted_sizes(f.at_u);
    CKind uk = su.alt.kind;
    bool shape5 = du == std::vector<int>{2, 1, 1, 1} && uk == CKind::K3minusR;
    bool shape6 = du == std::vector<int>{3, 1, 1, 1} && uk == CKind::K3;
    if (!shape5 && !shape6) return Step::Same;  // the other pole reduces first
    const AlternationConstraint& c = g_.slot[f.v].alt;
    int mv = -1, mu = -1;
    for (int i = 0; i < f.size(); ++i) {
        if (f.at_v[i].size() > 1) mv = i;
        if (f.at_u[i].size() > 1) mu = i;
    }
    std::set<Color> cols;
    for (int d : f.at_v[mv]) cols.insert(c.color_of(d));
    if (cols.size() != 2) {
        note("2111", f.v, "reject");
        return no(Reason::ConstraintConflict);
    }
    if (cols.count(Color::Red)) throw StructureViolation("red dart in a pair that should have been replaced");
    std::set<Color> ucols;
    for (int d : f.at_u[mu]) ucols.insert(su.alt.color_of(d));
    if (ucols.size() != f.at_u[mu].size()) return Step::Same;  // rejected when u is processed
    if (mv != mu) {
        PFrame g = f;
        g.flippable[mv] = 1;
        log_.push_back(reorder_entry(g, {{f.v, g_.slot[f.v]}, {f.u, su}}));
        note("2111", f.v, "drop-flip");
        g_.slot[f.v] = Slot::none();
        return Step::Changed;
    }
    return surgery(node, f, mv);
}

// Orders of a pole copy (children consecutive) that leave a gap between
// children where the detached dart completes the old constraint.
void check_copy(const PFrame& f, int r, bool at_v, const AlternationConstraint& old, int dart, const Slot& copy) {
    std::vector<std::vector<int>> groups;
    std::vector<int> darts;
    for (int c = 0; c < f.size(); ++c) {
        if (c == r) continue;
        groups.push_back(at_v ? f.at_v[c] : f.at_u[c]);
        darts.insert(darts.end(), groups.back().begin(), groups.back().end());
    }
    std::map<int, int> child;
    for (int c = 0; c < static_cast<int>(groups.size()); ++c)
        for (int d : groups[c]) child[d] = c;
    for (auto& o : all_circular_orders(darts)) {
        bool together = true;
        for (auto& g : groups) together = together && consecutive_in(o, {g.begin(), g.end()});
        if (!together) continue;
        bool want = false;
        const int k = static_cast<int>(o.size());
        for (int i = 0; i < k && !want; ++i) {
            if (child[o[i]] == child[o[(i + 1) % k]]) continue;
            std::vector<int> ext(o.begin(), o.begin() + i + 1);
            ext.push_back(dart);
            ext.insert(ext.end(), o.begin() + i + 1, o.end());
            want = old.holds(ext);
        }
        if (want != copy.holds(o)) {
            std::string msg = std::string("pole copy mismatch at_v=") + (at_v ? "1" : "0") + " old=" + ckind_name(old.kind) + " cols=";
            for (size_t i = 0; i < old.darts.size(); ++i) msg += std::to_string(old.darts[i]) + color_char(old.colors[i]) + " ";
            msg += " dart=" + std::to_string(dart) + " groups=";
            for (auto& g : groups) { msg += "["; for (int d : g) msg += std::to_string(d) + " "; msg += "]"; }
            msg += " order="; for (int d : o) msg += std::to_string(d) + " ";
            msg += " want=" + std::to_string(want) + " copy=" + (copy.kind == Slot::Kind::PQ ? copy.tree.to_string() : copy.kind == Slot::Kind::Alt ? std::string(ckind_name(copy.alt.kind)) : std::string("none"));
            throw StructureViolation(msg);
        }
    }
}

Step BlockSolver::surgery(int node, const PFrame& f, int multi) {
    const AlternationConstraint cv = g_.slot[f.v].alt;
    const AlternationConstraint cu = g_.slot[f.u].alt;
    int r = -1;
    for (int c = 0; c < f.size(); ++c)
        if (c != multi && f.at_v[c].size() == 1 && cv.color_of(f.at_v[c][0]) == Color::Red) r = c;
    if (r < 0 || f.at_u[r].size() != 1) throw StructureViolation("detached part must hold one edge per pole");
    const int dv = f.at_v[r][0], du = f.at_u[r][0];
    auto sv = derive_removed(cv, {dv}, false);
    auto su = derive_removed(cu, {du}, false);
    if (!sv || !su) throw StructureViolation("pole copy cannot be unsatisfiable");
    check_copy(f, r, true, cv, dv, *sv);
    check_copy(f, r, false, cu, du, *su);

    Entry en;
    en.type = Entry::Type::Surgery;
    en.frames = {f};
    en.checks = {{f.v, g_.slot[f.v]}, {f.u, g_.slot[f.u]}};
    en.detached_child = r;
    en.detached = tv_->all_behind(node, f.skel[r]);

    // the split-off part plus an edge standing for the rest
    GACP sub;
    std::map<int, int> vmap;
    std::vector<int> back;
    auto local = [&](int w) {
        auto it = vmap.find(w);
        if (it != vmap.end()) return it->second;
        int id = sub.add_vertex(g_.vid[w]);
        vmap[w] = id;
        return id;
    };
    std::map<int, int> emap;
    for (int e : en.detached) {
        emap[e] = sub.add_edge(local(g_.edges[e][0]), local(g_.edges[e][1]), g_.eid[e]);
        back.push_back(e);
    }
    int fake = sub.add_edge(local(f.u), local(f.v), -1);
    for (auto [w, lw] : vmap) {
        if (w == f.v || w == f.u) continue;
        Slot s = g_.slot[w];
        if (s.kind == Slot::Kind::Alt) {
            for (int& d : s.alt.darts) d = emap.at(d);
        } else if (s.kind == Slot::Kind::PQ) {
            for (auto& nd : s.tree.nodes)
                if (nd.kind == PQTree::Kind::Leaf) nd.label = emap.at(nd.label);
        }
        sub.slot[lw] = s;
        g_.slot[w] = Slot::none();
    }
    note("2111", f.v, "split");
    Reason why = Reason::None;
    auto sr = solve_block(std::move(sub), trace_, &why);
    if (!sr) return no(why);
    for (auto [w, lw] : vmap) {
        std::vector<int> ds;
        for (int d : sr->rot[lw])
            if ((d >> 1) != fake) ds.push_back(2 * back[d >> 1] + (d & 1));
        en.sub_rot[w] = ds;
    }
    for (int e : en.detached) g_.active[e] = 0;
    g_.slot[f.v] = *sv;
    g_.slot[f.u] = *su;
    log_.push_back(std::move(en));
    rebuild();
    for (int w = 0; w < g_.n; ++w) push(w);
    return Step::Changed;
}

Step BlockSolver::snode(int node) {
    const auto& sk = tv_->t.nodes[node].edges;
    const int k = static_cast<int>(sk.size());
    // walk the cycle
    std::vector<int> vs, es;
    {
        int e = 0, from = sk[0].u;
        for (int i = 0; i < k; ++i) {
            vs.push_back(tv_->lv_of[from]);
            es.push_back(e);
            int to = sk[e].u == from ? sk[e].v : sk[e].u;
            int next = -1;
            for (int j = 0; j < k; ++j)
                if (j != e && (sk[j].u == to || sk[j].v == to)) next = j;
            from = to;
            e = next;
        }
    }
    std::vector<PFrame> frames;
    std::vector<int> mids;
    for (int i = 0; i < k; ++i) {
        const Slot& s = g_.slot[vs[i]];
        if (s.kind != Slot::Kind::Alt || s.alt.kind != CKind::K3)
            throw StructureViolation("S-node cycle vertex without a K3 constraint");
        const auto& se = sk[es[i]];
        if (!se.is_virtual() || tv_->t.nodes[se.twin_node].type != SPQRTree::Type::P)
            throw StructureViolation("S-node cycle edge is not a P-node");
        PFrame f = make_frame(*tv_, se.twin_node, vs[i]);
        if (f.u != vs[(i + 1) % k] || f.size() != 4) throw StructureViolation("S-node neighbour has the wrong shape");
        int mid = -1;
        for (int c = 0; c < 4; ++c) {
            if (f.skel[c] == se.twin_edge) {
                mid = c;
                if (f.at_v[c].size() != 3 || f.at_u[c].size() != 3)
                    throw StructureViolation("S-node side must carry three edges per pole");
            } else if (f.at_v[c].size() != 1 || f.at_u[c].size() != 1) {
                throw StructureViolation("S-node neighbour children must be single edges");
            }
        }
        frames.push_back(f);
        mids.push_back(mid);
    }
    auto singles = [&](int i) {
        std::vector<int> r;
        for (int c = 0; c < 4; ++c)
            if (c != mids[i]) r.push_back(c);
        return r;
    };
    auto at_next = [&](int i, const std::vector<int>& pi) {
        // darts of frame i at its second pole, reversed order
        std::vector<int> r;
        for (auto it = pi.rbegin(); it != pi.rend(); ++it) r.push_back(frames[i].at_u[*it][0]);
        return r;
    };
    std::vector<int> p0 = singles(0);
    std::sort(p0.begin(), p0.end());
    bool found = false;
    do {
        std::vector<int> prev = p0;
        bool ok = true;
        for (int i = 1; i <= k && ok; ++i) {
            std::vector<int> a = at_next(i - 1, prev);
            if (i == k) {
                for (int c : p0) a.push_back(frames[0].at_v[c][0]);
                ok = g_.slot[vs[0]].alt.holds(a);
                break;
            }
            std::vector<int> pi = singles(i);
            std::sort(pi.begin(), pi.end());
            bool hit = false;
            do {
                std::vector<int> full = a;
                for (int c : pi) full.push_back(frames[i].at_v[c][0]);
                if (g_.slot[vs[i]].alt.holds(full)) {
                    hit = true;
                    break;
                }
            } while (std::next_permutation(pi.begin(), pi.end()));
            ok = hit;
            prev = pi;
        }
        found = ok;
    } while (!found && std::next_permutation(p0.begin(), p0.end()));
    if (!found) {
        note("snode", vs[0], "reject");
        return no(Reason::ConstraintConflict);
    }
    Entry en;
    en.type = Entry::Type::SNode;
    en.frames = frames;
    for (int v : vs) en.checks.push_back({v, g_.slot[v]});
    log_.push_back(std::move(en));
    for (int v : vs) {
        note("snode", v, "drop");
        g_.slot[v] = Slot::none();
    }
    return Step::Changed;
}

void BlockSolver::replay(RotationSystem& rot) {
    Repair rp(rot);
    for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
        Entry& en = *it;
        switch (en.type) {
            case Entry::Type::Reorder:
                if (!rp.search(en.frames[0], en.checks)) throw InternalInconsistency("no P-node order restores the constraint");
                break;
            case Entry::Type::Surgery: {
                const PFrame& f = en.frames[0];
                for (int e : en.detached) g_.active[e] = 1;
                for (auto& [w, ds] : en.sub_rot)
                    if (w != f.v && w != f.u) rot.rot[w] = ds;
                // put the part back into the gap after another child at v
                int c0 = en.detached_child == 0 ? 1 : 0;
                auto& rv = rot.rot[f.v];
                auto& ru = rot.rot[f.u];
                std::set<int> gv(f.at_v[c0].begin(), f.at_v[c0].end()), gu(f.at_u[c0].begin(), f.at_u[c0].end());
                int last = -1, first = -1;
                for (int i = 0; i < static_cast<int>(rv.size()); ++i) {
                    bool in = gv.count(rv[i] >> 1) > 0;
                    bool next_in = gv.count(rv[(i + 1) % rv.size()] >> 1) > 0;
                    if (in && !next_in) last = i;
                }
                for (int i = 0; i < static_cast<int>(ru.size()); ++i) {
                    bool in = gu.count(ru[i] >> 1) > 0;
                    bool prev_in = gu.count(ru[(i + ru.size() - 1) % ru.size()] >> 1) > 0;
                    if (in && !prev_in) first = i;
                }
                if (last < 0 || first < 0) throw InternalInconsistency("cannot locate the reinsertion gap");
                rv.insert(rv.begin() + last + 1, en.sub_rot.at(f.v).begin(), en.sub_rot.at(f.v).end());
                ru.insert(ru.begin() + first, en.sub_rot.at(f.u).begin(), en.sub_rot.at(f.u).end());
                if (!rp.search(f, en.checks)) throw InternalInconsistency("no position restores the split-off part");
                break;
            }
            case Entry::Type::SNode: {
                const int k = static_cast<int>(en.frames.size());
                // depth-first over the cycle; frame i fixes the rotation at its first pole
                std::function<bool(int)> go = [&](int i) {
                    const PFrame& f = en.frames[i];
                    const Blocks b = rp.read(f);
                    const auto keep_v = rot.rot[f.v], keep_u = rot.rot[f.u];
                    for (auto& o : cyclic_orders(4)) {
                        rp.apply(f, b, o, 0);
                        bool ok = i == 0 || rp.holds(en.checks[i].first, en.checks[i].second);
                        if (ok && i + 1 == k) ok = rp.holds(en.checks[0].first, en.checks[0].second);
                        if (ok && (i + 1 == k || go(i + 1))) return true;
                        rot.rot[f.v] = keep_v;
                        rot.rot[f.u] = keep_u;
                    }
                    return false;
                };
                bool done = go(0);
                if (!done) throw InternalInconsistency("S-node cycle orders do not close");
                break;
            }
        }
    }
}

std::optional<RotationSystem> BlockSolver::run(Reason* why) {
    auto fail = [&](Reason r) -> std::optional<RotationSystem> {
        if (why) *why = r;
        return std::nullopt;
    };
    const std::vector<Slot> original = g_.slot;
    queued_.assign(g_.n, 0);
    rebuild();
    for (int v = 0; v < g_.n; ++v) push(v);
    while (!queue_.empty()) {
        int v = queue_.front();
        queue_.pop_front();
        queued_[v] = 0;
        Step s = process(v);
        if (s == Step::No) return fail(fail_);
        if (s == Step::Changed) push_partners(v);
    }
    for (int x : tv_->t.alive_nodes()) {
        if (tv_->t.nodes[x].type != SPQRTree::Type::S) continue;
        // only cycles splitting a constrained vertex three and three
        bool any = false;
        for (int w : tv_->t.skeleton_vertices(x)) {
            int v = tv_->lv_of[w];
            if (g_.slot[v].kind != Slot::Kind::Alt) continue;
            bool even = true;
            for (int e : tv_->skel_at(x, v)) even = even && tv_->behind(x, e, v).size() == 3;
            any = any || even;
        }
        if (!any) continue;
        if (snode(x) == Step::No) return fail(fail_);
    }
    for (int v = 0; v < g_.n; ++v)
        if (g_.slot[v].kind == Slot::Kind::Alt && tv_->has(v))
            throw StructureViolation("alternation constraint survived the reductions at vertex " +
                                     std::to_string(g_.vid[v]));
    Reason r = Reason::None;
    auto emb = expand_and_embed(g_, &r);
    if (!emb) return fail(r);
    replay(*emb);
    for (int v = 0; v < g_.n; ++v)
        if (!original[v].holds(edges_of(emb->rot[v])))
            throw InternalInconsistency("repaired embedding violates the constraint at vertex " +
                                        std::to_string(g_.vid[v]));
    if (genus_defect(*emb) != 0) throw InternalInconsistency("repaired embedding is not planar");
    return emb;
}

}  // namespace

std::optional<RotationSystem> solve_block(GACP g, Trace* trace, Reason* why) {
    BlockSolver s(std::move(g), trace);
    return s.run(why);
}

}  // namespace satr
