#include "satr/pqtree.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>

namespace satr {

CircularOrder canonical_order(CircularOrder o) {
    if (!o.empty()) std::rotate(o.begin(), std::min_element(o.begin(), o.end()), o.end());
    return o;
}

CircularOrder reversed_order(const CircularOrder& o) {
    return canonical_order(CircularOrder(o.rbegin(), o.rend()));
}

std::vector<CircularOrder> all_circular_orders(std::vector<int> labels) {
    std::sort(labels.begin(), labels.end());
    std::vector<CircularOrder> out;
    if (labels.empty()) return out;
    do {
        out.push_back(labels);
    } while (std::next_permutation(labels.begin() + 1, labels.end()));
    return out;
}

CircularOrder project_order(const CircularOrder& o, const std::set<int>& keep) {
    CircularOrder r;
    for (int x : o)
        if (keep.count(x)) r.push_back(x);
    return canonical_order(r);
}

bool consecutive_in(const CircularOrder& o, const std::set<int>& s) {
    if (s.empty() || s.size() >= o.size()) return true;
    int changes = 0;
    for (size_t i = 0; i < o.size(); ++i) {
        bool a = s.count(o[i]) > 0;
        bool b = s.count(o[(i + 1) % o.size()]) > 0;
        if (a && !b) ++changes;
    }
    return changes == 1;
}

std::vector<int> PQTree::labels() const {
    std::vector<int> out;
    for (auto& n : nodes)
        if (n.kind == Kind::Leaf && n.label >= 0) out.push_back(n.label);
    std::sort(out.begin(), out.end());
    return out;
}

int PQTree::leaf_count() const { return static_cast<int>(labels().size()); }

int PQTree::leaf_of(int label) const {
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (nodes[i].kind == Kind::Leaf && nodes[i].label == label) return i;
    return -1;
}

namespace {

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void join(int a, int b) { p[find(a)] = find(b); }
};

constexpr int kDead = -2;

bool internal(const PQTree::Node& n) { return n.kind != PQTree::Kind::Leaf; }
bool dead(const PQTree::Node& n) { return n.kind == PQTree::Kind::Leaf && n.label == kDead; }

// neighbours of x read after `from` in x's cyclic order
std::vector<int> after(const std::vector<int>& cyc, int from) {
    auto it = std::find(cyc.begin(), cyc.end(), from);
    std::vector<int> out;
    size_t k = it - cyc.begin();
    for (size_t i = 1; i < cyc.size(); ++i) out.push_back(cyc[(k + i) % cyc.size()]);
    return out;
}

int min_leaf(const PQTree& t, int x, int from) {
    if (!internal(t.nodes[x])) return t.nodes[x].label;
    int best = INT32_MAX;
    for (int y : t.nodes[x].nbrs)
        if (y != from) best = std::min(best, min_leaf(t, y, x));
    return best;
}

}  // namespace

void PQTree::normalize() {
    int leaves = 0;
    for (auto& n : nodes)
        if (n.kind == Kind::Leaf && n.label >= 0) ++leaves;
    if (leaves <= 2) {
        std::vector<int> ls = labels();
        *this = universal(ls);
        return;
    }
    bool changed = true;
    std::vector<char> gone(nodes.size(), 0);
    for (size_t i = 0; i < nodes.size(); ++i)
        if (dead(nodes[i])) gone[i] = 1;
    auto unlink = [&](int a, int b) {
        auto& v = nodes[a].nbrs;
        v.erase(std::remove(v.begin(), v.end(), b), v.end());
    };
    while (changed) {
        changed = false;
        for (int x = 0; x < static_cast<int>(nodes.size()); ++x) {
            if (gone[x] || !internal(nodes[x])) continue;
            auto& nb = nodes[x].nbrs;
            if (nb.size() <= 1) {
                for (int y : nb) unlink(y, x);
                nb.clear();
                gone[x] = 1;
                changed = true;
            } else if (nb.size() == 2) {
                int a = nb[0], b = nb[1];
                std::replace(nodes[a].nbrs.begin(), nodes[a].nbrs.end(), x, b);
                std::replace(nodes[b].nbrs.begin(), nodes[b].nbrs.end(), x, a);
                nb.clear();
                gone[x] = 1;
                changed = true;
            }
        }
    }
    std::vector<int> remap(nodes.size(), -1);
    std::vector<Node> kept;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (!gone[i]) {
            remap[i] = static_cast<int>(kept.size());
            kept.push_back(nodes[i]);
        }
    for (auto& n : kept)
        for (int& y : n.nbrs) y = remap[y];
    std::vector<std::pair<int, int>> s2;
    for (auto [a, b] : sync)
        if (remap[a] >= 0 && remap[b] >= 0 && kept[remap[a]].kind == Kind::Q && kept[remap[b]].kind == Kind::Q)
            s2.emplace_back(remap[a], remap[b]);
    nodes = std::move(kept);
    sync = std::move(s2);
}

void PQTree::check() const {
    std::vector<int> ls = labels();
    if (std::adjacent_find(ls.begin(), ls.end()) != ls.end()) throw std::logic_error("duplicate leaf label");
    size_t edges = 0;
    for (int x = 0; x < static_cast<int>(nodes.size()); ++x) {
        const Node& n = nodes[x];
        if (n.kind == Kind::Leaf) {
            if (nodes.size() > 1 && n.nbrs.size() != 1) throw std::logic_error("leaf degree");
        } else if (n.nbrs.size() < 3 && ls.size() > 2) {
            throw std::logic_error("internal node of degree < 3");
        }
        for (int y : n.nbrs) {
            if (std::count(nodes[y].nbrs.begin(), nodes[y].nbrs.end(), x) != 1)
                throw std::logic_error("asymmetric adjacency");
            ++edges;
        }
    }
    if (!nodes.empty() && edges / 2 + 1 != nodes.size()) throw std::logic_error("not a tree");
    for (auto [a, b] : sync)
        if (nodes[a].kind != Kind::Q || nodes[b].kind != Kind::Q) throw std::logic_error("sync on non-Q node");
}

PQTree universal(const std::vector<int>& labels) {
    PQTree t;
    if (labels.empty()) return t;
    std::vector<int> ls(labels.begin(), labels.end());
    std::sort(ls.begin(), ls.end());
    if (ls.size() == 1) {
        t.nodes.push_back({PQTree::Kind::Leaf, ls[0], {}});
        return t;
    }
    t.nodes.push_back({PQTree::Kind::P, -1, {}});
    for (int l : ls) {
        t.nodes[0].nbrs.push_back(static_cast<int>(t.nodes.size()));
        t.nodes.push_back({PQTree::Kind::Leaf, l, {0}});
    }
    return t;
}

std::string PQTree::to_string() const {
    std::vector<int> ls = labels();
    if (ls.empty()) return "()";
    if (ls.size() == 1) return std::to_string(ls[0]);
    Dsu dsu(static_cast<int>(nodes.size()));
    for (auto [a, b] : sync) dsu.join(a, b);
    std::vector<int> synced(nodes.size(), 0);
    for (auto [a, b] : sync) synced[a] = synced[b] = 1;
    std::map<int, int> tag;
    std::ostringstream out;
    std::function<void(int, int)> emit = [&](int x, int from) {
        const Node& n = nodes[x];
        if (n.kind == Kind::Leaf) {
            out << n.label;
            return;
        }
        std::vector<int> items;
        if (from < 0) {
            int l0 = leaf_of(ls[0]);
            items = after(n.nbrs, l0);
            items.insert(items.begin(), l0);
        } else {
            items = after(n.nbrs, from);
        }
        if (n.kind == Kind::P) {
            auto first = from < 0 ? items.begin() + 1 : items.begin();
            std::sort(first, items.end(), [&](int a, int b) { return min_leaf(*this, a, x) < min_leaf(*this, b, x); });
            out << "P(";
        } else {
            out << "Q";
            if (synced[x]) {
                int root = dsu.find(x);
                if (!tag.count(root)) tag[root] = static_cast<int>(tag.size()) + 1;
                out << '#' << tag[root];
            }
            out << "[";
        }
        for (size_t i = 0; i < items.size(); ++i) {
            if (i) out << ' ';
            emit(items[i], x);
        }
        out << (n.kind == Kind::P ? ")" : "]");
    };
    emit(nodes[leaf_of(ls[0])].nbrs[0], -1);
    return out.str();
}

PQTree PQTree::parse(const std::string& s, const std::function<int(const std::string&)>& label_of) {
    PQTree t;
    size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    std::map<int, std::vector<int>> tags;
    std::function<int(int)> node = [&](int parent) -> int {
        skip();
        if (i >= s.size()) throw std::invalid_argument("unexpected end of tree text");
        int id = static_cast<int>(t.nodes.size());
        if ((s[i] == 'P' && i + 1 < s.size() && s[i + 1] == '(') || (s[i] == 'Q' && i + 1 < s.size() && (s[i + 1] == '[' || s[i + 1] == '#'))) {
            bool q = s[i] == 'Q';
            ++i;
            t.nodes.push_back({q ? Kind::Q : Kind::P, -1, {}});
            if (parent >= 0) t.nodes[id].nbrs.push_back(parent);
            if (q && s[i] == '#') {
                ++i;
                int k = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) k = k * 10 + (s[i++] - '0');
                tags[k].push_back(id);
            }
            char close = q ? ']' : ')';
            ++i;
            for (;;) {
                skip();
                if (i >= s.size()) throw std::invalid_argument("unterminated node");
                if (s[i] == close) {
                    ++i;
                    break;
                }
                int c = node(id);
                t.nodes[id].nbrs.push_back(c);
            }
            return id;
        }
        size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '-' || s[j] == '\''))
            ++j;
        if (j == i) throw std::invalid_argument("bad token in tree text");
        std::string tok = s.substr(i, j - i);
        i = j;
        int label = label_of ? label_of(tok) : std::stoi(tok);
        t.nodes.push_back({Kind::Leaf, label, {}});
        if (parent >= 0) t.nodes[id].nbrs.push_back(parent);
        return id;
    };
    node(-1);
    for (auto& [k, ids] : tags)
        for (size_t a = 1; a < ids.size(); ++a) t.sync.emplace_back(ids[0], ids[a]);
    t.check();
    return t;
}

std::set<CircularOrder> enumerate_orders(const PQTree& t, size_t cap) {
    std::set<CircularOrder> out;
    std::vector<int> ls = t.labels();
    if (ls.size() <= 2) {
        out.insert(ls);
        return out;
    }
    const int n = static_cast<int>(t.nodes.size());
    Dsu dsu(n);
    for (auto [a, b] : t.sync) dsu.join(a, b);
    std::vector<int> pnodes, qclasses;
    for (int x = 0; x < n; ++x) {
        if (t.nodes[x].kind == PQTree::Kind::P) pnodes.push_back(x);
        if (t.nodes[x].kind == PQTree::Kind::Q && dsu.find(x) == x) qclasses.push_back(x);
    }
    double total = std::pow(2.0, static_cast<double>(qclasses.size()));
    for (int x : pnodes) total *= std::tgamma(static_cast<double>(t.nodes[x].nbrs.size()));
    if (total > static_cast<double>(cap)) throw CapExceeded("tree represents too many orders");

    std::vector<std::vector<int>> cyc(n);
    for (int x = 0; x < n; ++x) cyc[x] = t.nodes[x].nbrs;
    std::map<int, int> qbit;
    const int l0 = t.leaf_of(ls[0]);
    auto emit = [&] {
        CircularOrder o;
        std::function<void(int, int)> walk = [&](int x, int from) {
            if (t.nodes[x].kind == PQTree::Kind::Leaf) {
                o.push_back(t.nodes[x].label);
                return;
            }
            std::vector<int> seq = cyc[x];
            if (t.nodes[x].kind == PQTree::Kind::Q && qbit[dsu.find(x)]) std::reverse(seq.begin(), seq.end());
            for (int y : after(seq, from)) walk(y, x);
        };
        o.push_back(ls[0]);
        walk(t.nodes[l0].nbrs[0], l0);
        out.insert(canonical_order(o));
    };
    std::function<void(size_t)> choose_q;
    std::function<void(size_t)> choose_p = [&](size_t k) {
        if (k == pnodes.size()) {
            choose_q(0);
            return;
        }
        int x = pnodes[k];
        std::vector<int> base = t.nodes[x].nbrs;
        std::sort(base.begin() + 1, base.end());
        do {
            cyc[x] = base;
            choose_p(k + 1);
        } while (std::next_permutation(base.begin() + 1, base.end()));
    };
    choose_q = [&](size_t k) {
        if (k == qclasses.size()) {
            emit();
            return;
        }
        for (int b = 0; b < 2; ++b) {
            qbit[qclasses[k]] = b;
            choose_q(k + 1);
        }
    };
    choose_p(0);
    return out;
}

std::optional<std::map<int, int>> q_orientations(const PQTree& t, const CircularOrder& order) {
    std::vector<int> ls = t.labels();
    std::vector<int> sorted_order(order.begin(), order.end());
    std::sort(sorted_order.begin(), sorted_order.end());
    if (sorted_order != ls) return std::nullopt;
    std::map<int, int> orient;
    if (ls.size() <= 2) return orient;
    CircularOrder o = canonical_order(order);
    std::map<int, int> pos;
    for (int i = 0; i < static_cast<int>(o.size()); ++i) pos[o[i]] = i;
    bool ok = true;
    struct Span {
        int lo, hi, cnt;
    };
    std::function<Span(int, int)> walk = [&](int x, int from) -> Span {
        const auto& n = t.nodes[x];
        if (n.kind == PQTree::Kind::Leaf) {
            int p = pos[n.label];
            return {p, p, 1};
        }
        std::vector<std::pair<int, int>> kids;  // (lo, node)
        Span s{INT32_MAX, -1, 0};
        for (int y : n.nbrs) {
            if (y == from) continue;
            Span c = walk(y, x);
            if (!ok) return s;
            kids.emplace_back(c.lo, y);
            s.lo = std::min(s.lo, c.lo);
            s.hi = std::max(s.hi, c.hi);
            s.cnt += c.cnt;
        }
        if (s.hi - s.lo + 1 != s.cnt) {
            ok = false;
            return s;
        }
        if (n.kind == PQTree::Kind::Q) {
            std::sort(kids.begin(), kids.end());
            std::vector<int> realized;
            for (auto& k : kids) realized.push_back(k.second);
            std::vector<int> ref = after(n.nbrs, from);
            if (realized == ref) {
                orient[x] = 0;
            } else if (std::equal(realized.begin(), realized.end(), ref.rbegin())) {
                orient[x] = 1;
            } else {
                ok = false;
            }
        }
        return s;
    };
    int l0 = t.leaf_of(o[0]);
    walk(t.nodes[l0].nbrs[0], l0);
    if (!ok) return std::nullopt;
    return orient;
}

bool is_compatible(const PQTree& t, const CircularOrder& order) {
    auto o = q_orientations(t, order);
    if (!o) return false;
    for (auto [a, b] : t.sync)
        if ((*o)[a] != (*o)[b]) return false;
    return true;
}

PQTree restrict_tree(const PQTree& t, const std::set<int>& keep) {
    std::vector<int> ls;
    for (int l : t.labels())
        if (keep.count(l)) ls.push_back(l);
    if (ls.size() <= 2) return universal(ls);
    PQTree r = t;
    const int n = static_cast<int>(t.nodes.size());
    std::vector<char> live(n, 0);
    const int root = t.leaf_of(ls[0]);
    std::function<bool(int, int)> mark = [&](int x, int from) -> bool {
        bool any = t.nodes[x].kind == PQTree::Kind::Leaf && keep.count(t.nodes[x].label);
        for (int y : t.nodes[x].nbrs)
            if (y != from && mark(y, x)) any = true;
        live[x] = any;
        return any;
    };
    mark(root, -1);
    for (int x = 0; x < n; ++x) {
        if (!live[x]) {
            r.nodes[x] = {PQTree::Kind::Leaf, kDead, {}};
            continue;
        }
        auto& nb = r.nodes[x].nbrs;
        nb.erase(std::remove_if(nb.begin(), nb.end(), [&](int y) { return !live[y]; }), nb.end());
    }
    r.normalize();
    return r;
}

// Consecutivity reduction.  The tree is rooted at a leaf outside the subset,
// which turns the circular question into the linear one; the classic
// bottom-up template matching then runs on the rooted view.
namespace {

enum class Mark { Empty, Full, Partial };

struct Reducer {
    PQTree t;
    std::set<int> s;
    std::vector<int> parent;
    std::vector<std::vector<int>> kids;
    std::vector<int> full_count;
    std::vector<char> touched;
    bool failed = false;

    int add_node(PQTree::Kind k, std::vector<int> ch) {
        int id = static_cast<int>(t.nodes.size());
        t.nodes.push_back({k, -1, {}});
        parent.push_back(-1);
        kids.push_back(std::move(ch));
        full_count.push_back(0);
        touched.push_back(1);
        for (int c : kids[id]) parent[c] = id;
        return id;
    }

    int group(const std::vector<int>& xs) {
        if (xs.size() == 1) return xs[0];
        return add_node(PQTree::Kind::P, xs);
    }

    Mark mark_of(int c) {
        if (full_count[c] == 0) return Mark::Empty;
        if (t.nodes[c].kind == PQTree::Kind::Leaf) return Mark::Full;
        int leaves = 0;
        countLeaves(c, leaves);
        return full_count[c] == leaves ? Mark::Full : Mark::Partial;
    }
    void countLeaves(int x, int& acc) {
        if (t.nodes[x].kind == PQTree::Kind::Leaf) {
            ++acc;
            return;
        }
        for (int c : kids[x]) countLeaves(c, acc);
    }

    // children of a partial Q-node, oriented empty side first
    std::vector<int> take(int y) {
        touched[y] = 1;
        std::vector<int> ch = kids[y];
        kids[y].clear();
        t.nodes[y] = {PQTree::Kind::Leaf, kDead, {}};
        return ch;
    }

    // non-root node of the pertinent subtree; on Partial, x becomes a Q-node
    // whose full children sit at the end
    Mark reduce(int x) {
        std::vector<Mark> m;
        for (int c : kids[x]) {
            Mark mc = mark_of(c);
            if (mc == Mark::Partial) mc = reduce(c);
            if (failed) return Mark::Empty;
            m.push_back(mc);
        }
        if (std::all_of(m.begin(), m.end(), [](Mark a) { return a == Mark::Full; })) return Mark::Full;
        touched[x] = 1;
        std::vector<int> e, f, p;
        for (size_t i = 0; i < m.size(); ++i)
            (m[i] == Mark::Empty ? e : m[i] == Mark::Full ? f : p).push_back(kids[x][i]);
        if (t.nodes[x].kind == PQTree::Kind::P) {
            if (p.size() > 1) return failed = true, Mark::Empty;
            std::vector<int> seq;
            if (!e.empty()) seq.push_back(group(e));
            if (!p.empty())
                for (int c : take(p[0])) seq.push_back(c);
            if (!f.empty()) seq.push_back(group(f));
            t.nodes[x].kind = PQTree::Kind::Q;
            kids[x] = seq;
            for (int c : seq) parent[c] = x;
            return Mark::Partial;
        }
        // Q-node: want Empty* Partial? Full*, possibly mirrored
        auto fits = [&](const std::vector<Mark>& mm) {
            size_t i = 0;
            while (i < mm.size() && mm[i] == Mark::Empty) ++i;
            if (i < mm.size() && mm[i] == Mark::Partial) ++i;
            while (i < mm.size() && mm[i] == Mark::Full) ++i;
            return i == mm.size();
        };
        if (!fits(m)) {
            std::reverse(m.begin(), m.end());
            std::reverse(kids[x].begin(), kids[x].end());
            if (!fits(m)) return failed = true, Mark::Empty;
        }
        std::vector<int> seq;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == Mark::Partial)
                for (int c : take(kids[x][i])) seq.push_back(c);
            else
                seq.push_back(kids[x][i]);
        }
        kids[x] = seq;
        for (int c : seq) parent[c] = x;
        return Mark::Partial;
    }

    void reduce_root(int x) {
        std::vector<Mark> m;
        for (int c : kids[x]) {
            Mark mc = mark_of(c);
            if (mc == Mark::Partial) mc = reduce(c);
            if (failed) return;
            m.push_back(mc);
        }
        if (std::all_of(m.begin(), m.end(), [](Mark a) { return a != Mark::Empty; }) &&
            std::none_of(m.begin(), m.end(), [](Mark a) { return a == Mark::Partial; }))
            return;
        touched[x] = 1;
        if (t.nodes[x].kind == PQTree::Kind::P) {
            std::vector<int> e, f, p;
            for (size_t i = 0; i < m.size(); ++i)
                (m[i] == Mark::Empty ? e : m[i] == Mark::Full ? f : p).push_back(kids[x][i]);
            if (p.size() > 2) {
                failed = true;
                return;
            }
            std::vector<int> seq = e;
            if (p.empty()) {
                seq.push_back(group(f));
            } else {
                std::vector<int> q = take(p[0]);
                if (!f.empty()) q.push_back(group(f));
                if (p.size() == 2) {
                    std::vector<int> tail = take(p[1]);
                    q.insert(q.end(), tail.rbegin(), tail.rend());
                }
                seq.push_back(add_node(PQTree::Kind::Q, q));
            }
            kids[x] = seq;
            for (int c : seq) parent[c] = x;
            return;
        }
        int lo = -1, hi = -1;
        for (int i = 0; i < static_cast<int>(m.size()); ++i)
            if (m[i] != Mark::Empty) {
                if (lo < 0) lo = i;
                hi = i;
            }
        for (int i = lo + 1; i < hi; ++i)
            if (m[i] != Mark::Full) {
                failed = true;
                return;
            }
        std::vector<int> seq;
        for (int i = 0; i < static_cast<int>(m.size()); ++i) {
            if (m[i] != Mark::Partial) {
                seq.push_back(kids[x][i]);
                continue;
            }
            std::vector<int> ch = take(kids[x][i]);
            if (i == lo && lo != hi)
                seq.insert(seq.end(), ch.begin(), ch.end());
            else if (i == hi && lo != hi)
                seq.insert(seq.end(), ch.rbegin(), ch.rend());
            else {
                failed = true;  // a lone partial child cannot be the pertinent root's only content
                return;
            }
        }
        kids[x] = seq;
        for (int c : seq) parent[c] = x;
    }
};

}  // namespace

std::optional<PQTree> apply_consecutivity(const PQTree& t, const std::set<int>& subset) {
    std::vector<int> ls = t.labels();
    for (int x : subset)
        if (!std::binary_search(ls.begin(), ls.end(), x)) throw std::invalid_argument("subset label not in tree");
    if (subset.size() <= 1 || subset.size() + 1 >= ls.size()) return t;
    int r = -1;
    for (int l : ls)
        if (!subset.count(l)) {
            r = l;
            break;
        }
    Reducer red;
    red.t = t;
    red.s = subset;
    const int n = static_cast<int>(t.nodes.size());
    red.parent.assign(n, -1);
    red.kids.assign(n, {});
    red.full_count.assign(n, 0);
    red.touched.assign(n, 0);
    const int root_leaf = t.leaf_of(r);
    std::function<int(int, int)> build = [&](int x, int from) -> int {
        red.parent[x] = from;
        int cnt = t.nodes[x].kind == PQTree::Kind::Leaf && subset.count(t.nodes[x].label) ? 1 : 0;
        if (from >= 0 || x != root_leaf)
            for (int y : after(t.nodes[x].nbrs, from)) {
                red.kids[x].push_back(y);
                cnt += build(y, x);
            }
        red.full_count[x] = cnt;
        return cnt;
    };
    const int top = t.nodes[root_leaf].nbrs[0];
    build(top, root_leaf);
    int pr = top;
    const int need = static_cast<int>(subset.size());
    for (;;) {
        int next = -1;
        for (int c : red.kids[pr])
            if (red.full_count[c] == need) next = c;
        if (next < 0 || red.t.nodes[next].kind == PQTree::Kind::Leaf) break;
        pr = next;
    }
    red.reduce_root(pr);
    if (red.failed) return std::nullopt;
    PQTree out = red.t;
    for (int x = 0; x < static_cast<int>(out.nodes.size()); ++x) {
        if (dead(out.nodes[x])) continue;
        if (out.nodes[x].kind == PQTree::Kind::Leaf) {
            out.nodes[x].nbrs.clear();
            if (x != root_leaf) out.nodes[x].nbrs.push_back(red.parent[x]);
            continue;
        }
        std::vector<int> nb{red.parent[x]};
        nb.insert(nb.end(), red.kids[x].begin(), red.kids[x].end());
        out.nodes[x].nbrs = nb;
    }
    out.nodes[root_leaf].nbrs = {top};
    for (auto [a, b] : t.sync)
        if (red.touched[a] || red.touched[b])
            throw std::invalid_argument("consecutivity would restructure a synchronized Q-node");
    out.normalize();
    return out;
}

}  // namespace satr
