#include "satr/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "satr/embedding.hpp"

namespace satr {

namespace {

// Planarization for one choice of crossing orders.  Segment s owns darts 2s
// (at ends[s][0]) and 2s+1 (at ends[s][1]).
struct Planarization {
    int n = 0, nodes = 0;
    std::vector<std::array<int, 2>> ends;
    std::vector<int> seg_edge, seg_idx;
    std::vector<std::vector<int>> darts_at;
};

Planarization planarize(const ATGraph& a, const std::vector<std::vector<int>>& routes) {
    const Graph& g = a.graph;
    Planarization p;
    p.n = g.vertex_count();
    p.nodes = p.n + static_cast<int>(a.crossings.size());
    p.darts_at.assign(p.nodes, {});
    for (int e = 0; e < g.edge_count(); ++e) {
        int prev = g.edges[e].u;
        int idx = 0;
        auto add = [&](int x, int y) {
            int s = static_cast<int>(p.ends.size());
            p.ends.push_back({x, y});
            p.seg_edge.push_back(e);
            p.seg_idx.push_back(idx++);
            p.darts_at[x].push_back(2 * s);
            p.darts_at[y].push_back(2 * s + 1);
        };
        for (int d : routes[e]) {
            add(prev, p.n + d);
            prev = p.n + d;
        }
        add(prev, g.edges[e].v);
    }
    return p;
}

// Each crossing becomes a wheel whose rim carries the four segment ends in
// alternating order.  An alternating planar embedding of the planarization
// yields a planar drawing of this graph, so nonplanarity here rules the
// routing out.
bool wheel_graph_planar(const Planarization& p) {
    int nodes = p.n;
    std::vector<std::array<int, 2>> edges;
    std::vector<int> attach(2 * p.ends.size(), -1);  // dart -> vertex of the wheel graph
    for (int x = p.n; x < p.nodes; ++x) {
        const auto& ds = p.darts_at[x];
        if (ds.size() != 4) continue;
        std::vector<int> e1, e2;
        int first = p.seg_edge[ds[0] >> 1];
        for (int d : ds) (p.seg_edge[d >> 1] == first ? e1 : e2).push_back(d);
        int base = nodes;
        nodes += 5;
        int order[4] = {e1[0], e2[0], e1[1], e2[1]};
        for (int i = 0; i < 4; ++i) {
            attach[order[i]] = base + i;
            edges.push_back({base + i, base + (i + 1) % 4});
            edges.push_back({base + i, base + 4});
        }
    }
    for (size_t s = 0; s < p.ends.size(); ++s) {
        int a = attach[2 * s] >= 0 ? attach[2 * s] : p.ends[s][0];
        int b = attach[2 * s + 1] >= 0 ? attach[2 * s + 1] : p.ends[s][1];
        edges.push_back({a, b});
    }
    return embed_edges(nodes, edges).has_value();
}

class RotationSearch {
public:
    using Found = std::function<bool(const std::vector<std::vector<int>>&)>;  // return true to stop

    RotationSearch(const Planarization& p, const OracleOptions& opt, long long& counter, const Graph& g)
        : p_(p), opt_(opt), counter_(counter) {
        int nodes = p.nodes;
        int darts = 2 * static_cast<int>(p.ends.size());
        total_darts_ = darts;
        // components and required face count
        std::vector<int> comp(nodes);
        std::iota(comp.begin(), comp.end(), 0);
        std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
        for (auto& e : p.ends) comp[find(e[0])] = find(e[1]);
        std::vector<int> cv(nodes, 0), ce(nodes, 0);
        for (int x = 0; x < nodes; ++x) ++cv[find(x)];
        for (auto& e : p.ends) ++ce[find(e[0])];
        required_ = 0;
        for (int x = 0; x < nodes; ++x)
            if (find(x) == x && ce[x] > 0) required_ += ce[x] - cv[x] + 2;
        // single-edge components go first and are never pruned against
        std::vector<int> tiny, dummies, reals;
        for (int x = 0; x < nodes; ++x) {
            if (p.darts_at[x].empty()) continue;
            if (ce[find(x)] == 1) tiny.push_back(x);
            else if (x >= p.n) dummies.push_back(x);
            else reals.push_back(x);
        }
        std::stable_sort(reals.begin(), reals.end(),
                         [&](int x, int y) { return p.darts_at[x].size() > p.darts_at[y].size(); });
        order_ = tiny;
        prune_from_ = static_cast<int>(tiny.size());
        order_.insert(order_.end(), dummies.begin(), dummies.end());
        order_.insert(order_.end(), reals.begin(), reals.end());

        choices_.assign(nodes, {});
        for (int x : order_) choices_[x] = candidates(x, g);
        if (opt.symmetry && opt.pinned.empty()) {
            int w = -1;
            for (int x : order_)
                if (p.darts_at[x].size() >= 3 && (w < 0 || p.darts_at[x].size() > p.darts_at[w].size())) w = x;
            if (w >= 0) {
                auto& c = choices_[w];
                c.erase(std::remove_if(c.begin(), c.end(), [](const std::vector<int>& r) { return r[1] > r.back(); }),
                        c.end());
            }
        }
        hd_.resize(darts);
        tl_.resize(darts);
        ln_.assign(darts, 1);
        std::iota(hd_.begin(), hd_.end(), 0);
        std::iota(tl_.begin(), tl_.end(), 0);
        rot_.assign(nodes, {});
    }

    // false when stopped by the callback
    bool run(const Found& found) {
        found_ = &found;
        return rec(0);
    }

private:
    const Planarization& p_;
    const OracleOptions& opt_;
    long long& counter_;
    const Found* found_ = nullptr;
    int total_darts_ = 0, required_ = 0, prune_from_ = 0;
    std::vector<int> order_;
    std::vector<std::vector<std::vector<int>>> choices_;
    std::vector<std::vector<int>> rot_;
    std::vector<int> hd_, tl_, ln_;
    int closed_ = 0, closed_darts_ = 0;
    struct Change {
        bool closure;
        int h, old_tail, old_len, t, old_head;
    };
    std::vector<Change> log_;

    std::vector<std::vector<int>> candidates(int x, const Graph& g) {
        const auto& ds = p_.darts_at[x];
        std::vector<std::vector<int>> out;
        if (x >= p_.n) {
            // a crossing: the two segments of each edge sit opposite
            std::vector<int> e1, e2;
            int first = p_.seg_edge[ds[0] >> 1];
            for (int d : ds) (p_.seg_edge[d >> 1] == first ? e1 : e2).push_back(d);
            out.push_back({e1[0], e2[0], e1[1], e2[1]});
            out.push_back({e1[0], e2[1], e1[1], e2[0]});
            return out;
        }
        auto pin = opt_.pinned.find(x);
        if (pin != opt_.pinned.end()) {
            std::vector<int> r;
            for (int e : pin->second) {
                int found = -1;
                for (int d : ds)
                    if (p_.seg_edge[d >> 1] == e) found = d;
                if (found < 0 || e < 0 || e >= g.edge_count()) throw MalformedInput("pinned rotation names a non-incident edge");
                r.push_back(found);
            }
            if (r.size() != ds.size()) throw MalformedInput("pinned rotation does not list every incident edge");
            out.push_back(r);
            return out;
        }
        std::vector<int> rest(ds.begin() + 1, ds.end());
        std::sort(rest.begin(), rest.end());
        do {
            std::vector<int> r{ds[0]};
            r.insert(r.end(), rest.begin(), rest.end());
            out.push_back(r);
        } while (std::next_permutation(rest.begin(), rest.end()));
        return out;
    }

    void link(int d, int e) {
        int h = hd_[d];
        if (h == e) {
            ++closed_;
            closed_darts_ += ln_[h];
            log_.push_back({true, h, 0, 0, 0, 0});
            return;
        }
        int t = tl_[e];
        log_.push_back({false, h, tl_[h], ln_[h], t, hd_[t]});
        tl_[h] = t;
        hd_[t] = h;
        ln_[h] += ln_[e];
    }
    void undo_to(size_t mark) {
        while (log_.size() > mark) {
            Change c = log_.back();
            log_.pop_back();
            if (c.closure) {
                --closed_;
                closed_darts_ -= ln_[c.h];
            } else {
                tl_[c.h] = c.old_tail;
                ln_[c.h] = c.old_len;
                hd_[c.t] = c.old_head;
            }
        }
    }

    bool rec(int depth) {
        if (depth == static_cast<int>(order_.size())) {
            if (closed_ == required_) return !(*found_)(rot_);
            return true;
        }
        int x = order_[depth];
        for (const auto& r : choices_[x]) {
            if (++counter_ > opt_.limits.max_rotations) throw LimitExceeded("rotation enumeration limit reached");
            size_t mark = log_.size();
            int k = static_cast<int>(r.size());
            for (int i = 0; i < k; ++i) link(r[i] ^ 1, r[(i + 1) % k]);
            bool go = true;
            if (depth >= prune_from_ && closed_ + (total_darts_ - closed_darts_) / 3 < required_) go = false;
            if (go) {
                rot_[x] = r;
                bool cont = rec(depth + 1);
                rot_[x].clear();
                if (!cont) {
                    undo_to(mark);
                    return false;
                }
            }
            undo_to(mark);
        }
        return true;
    }
};

PlanarizationCertificate make_certificate(const ATGraph& a, const Planarization& p,
                                          const std::vector<std::vector<int>>& routes,
                                          const std::vector<std::vector<int>>& rot) {
    PlanarizationCertificate w;
    w.dummies = a.crossings;
    w.routes = routes;
    w.rotations.assign(p.nodes, {});
    for (int x = 0; x < p.nodes; ++x)
        for (int d : rot[x]) w.rotations[x].push_back({p.seg_edge[d >> 1], p.seg_idx[d >> 1], d & 1});
    canonicalize(a.graph, w);
    return w;
}

// Calls body for every combination of crossing orders along the edges;
// body returns false to stop.
void for_each_routing(const ATGraph& a, const std::function<bool(const std::vector<std::vector<int>>&)>& body) {
    int m = a.graph.edge_count();
    std::vector<std::vector<int>> routes(m);
    for (int d = 0; d < static_cast<int>(a.crossings.size()); ++d) {
        routes[a.crossings[d].first].push_back(d);
        routes[a.crossings[d].second].push_back(d);
    }
    for (auto& r : routes) std::sort(r.begin(), r.end());
    std::vector<int> multi;
    for (int e = 0; e < m; ++e)
        if (routes[e].size() >= 2) multi.push_back(e);
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == multi.size()) return body(routes);
        auto& r = routes[multi[i]];
        std::sort(r.begin(), r.end());
        do {
            if (!rec(i + 1)) return false;
        } while (std::next_permutation(r.begin(), r.end()));
        return true;
    };
    rec(0);
}

void check_limits(const ATGraph& a, const OracleLimits& lim) {
    int nodes = a.graph.vertex_count() + static_cast<int>(a.crossings.size());
    int darts = 2 * (a.graph.edge_count() + 2 * static_cast<int>(a.crossings.size()));
    if (nodes > lim.max_nodes) throw LimitExceeded("planarization has too many vertices");
    if (darts > lim.max_darts) throw LimitExceeded("planarization has too many darts");
}

}  // namespace

Verdict brute_force_satr(const ATGraph& a, const OracleLimits& lim) {
    OracleOptions opt;
    opt.limits = lim;
    return brute_force_satr(a, opt);
}

Verdict brute_force_satr(const ATGraph& a, const OracleOptions& opt, OracleStats* stats) {
    Verdict v;
    if (validate(a) != Reason::None) {
        v.reason = validate(a);
        return v;
    }
    check_limits(a, opt.limits);
    long long counter = 0;
    long long orders = 0;
    for_each_routing(a, [&](const std::vector<std::vector<int>>& routes) {
        ++orders;
        Planarization p = planarize(a, routes);
        if (opt.planarity_filter && !wheel_graph_planar(p)) return true;
        RotationSearch s(p, opt, counter, a.graph);
        s.run([&](const std::vector<std::vector<int>>& rot) {
            v.yes = true;
            v.witness = make_certificate(a, p, routes, rot);
            return true;
        });
        return !v.yes;
    });
    if (stats) {
        stats->orders = orders;
        stats->rotations = counter;
    }
    if (!v.yes) v.reason = Reason::NoRealization;
    return v;
}

std::vector<PlanarizationCertificate> enumerate_realizations(const ATGraph& a, const OracleLimits& lim) {
    OracleOptions opt;
    opt.limits = lim;
    return enumerate_realizations(a, opt);
}

std::vector<PlanarizationCertificate> enumerate_realizations(const ATGraph& a, const OracleOptions& opt) {
    if (validate(a) != Reason::None) return {};
    check_limits(a, opt.limits);
    using Key = std::pair<std::vector<std::vector<int>>, std::vector<std::vector<CertDart>>>;
    std::set<Key> seen;
    std::vector<PlanarizationCertificate> out;
    auto add = [&](PlanarizationCertificate w) {
        canonicalize(a.graph, w);
        if (seen.insert({w.routes, w.rotations}).second) out.push_back(std::move(w));
    };
    long long counter = 0;
    bool mirrored = opt.symmetry && opt.pinned.empty();
    for_each_routing(a, [&](const std::vector<std::vector<int>>& routes) {
        Planarization p = planarize(a, routes);
        if (opt.planarity_filter && !wheel_graph_planar(p)) return true;
        RotationSearch s(p, opt, counter, a.graph);
        s.run([&](const std::vector<std::vector<int>>& rot) {
            PlanarizationCertificate w = make_certificate(a, p, routes, rot);
            if (mirrored) {
                PlanarizationCertificate m = w;
                for (auto& r : m.rotations) std::reverse(r.begin(), r.end());
                add(std::move(m));
            }
            add(std::move(w));
            return false;
        });
        return true;
    });
    return out;
}

}  // namespace satr
