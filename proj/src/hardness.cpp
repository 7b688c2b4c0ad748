#include "satr/hardness.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "satr/spqr.hpp"

namespace satr {

CNF parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CNF f;
    int declared = -1;
    std::vector<int> cur;
    std::vector<std::vector<int>> raw;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        if (tok == "%") break;
        if (tok == "p") {
            std::string fmt;
            if (declared >= 0 || !(ls >> fmt >> f.variables >> declared) || fmt != "cnf" || f.variables < 0 || declared < 0)
                throw MalformedInput("bad DIMACS problem line");
            continue;
        }
        if (declared < 0) throw MalformedInput("DIMACS clause before the problem line");
        do {
            int lit;
            try {
                size_t used;
                lit = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw MalformedInput("bad DIMACS literal '" + tok + "'");
            }
            if (lit == 0) {
                raw.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(lit);
            }
        } while (ls >> tok);
    }
    if (declared < 0) throw MalformedInput("missing DIMACS problem line");
    if (!cur.empty()) raw.push_back(cur);
    if (static_cast<int>(raw.size()) != declared) throw MalformedInput("DIMACS clause count differs from the problem line");
    for (auto& c : raw) {
        if (c.size() != 3) throw MalformedInput("clause without exactly three literals");
        std::array<Literal, 3> cl;
        for (int i = 0; i < 3; ++i) {
            int v = std::abs(c[i]);
            if (v > f.variables) throw MalformedInput("literal of an undeclared variable");
            cl[i] = {v - 1, c[i] < 0};
        }
        if (cl[0].var == cl[1].var || cl[0].var == cl[2].var || cl[1].var == cl[2].var)
            throw MalformedInput("clause repeats a variable");
        f.clauses.push_back(cl);
    }
    return f;
}

std::string to_dimacs(const CNF& f) {
    std::ostringstream out;
    out << "p cnf " << f.variables << " " << f.clauses.size() << "\n";
    for (auto& c : f.clauses) {
        for (auto& l : c) out << (l.negated ? -(l.var + 1) : l.var + 1) << " ";
        out << "0\n";
    }
    return out.str();
}

VariableClauseGraph build_variable_clause_graph(const CNF& f) {
    VariableClauseGraph g;
    g.variables = f.variables;
    g.clauses = static_cast<int>(f.clauses.size());
    for (int c = 0; c < g.clauses; ++c)
        for (const Literal& l : f.clauses[c]) {
            g.edges.push_back({l.var, g.variables + c});
            g.negated.push_back(l.negated);
        }
    return g;
}

bool is_triconnected(int n, const std::vector<std::array<int, 2>>& edges) {
    if (n < 4 || !is_biconnected(n, edges)) return false;
    for (int x = 0; x < n; ++x) {
        std::vector<std::array<int, 2>> rest;
        for (auto [u, v] : edges)
            if (u != x && v != x) rest.push_back({u > x ? u - 1 : u, v > x ? v - 1 : v});
        if (!is_biconnected(n - 1, rest)) return false;
    }
    return true;
}

Precondition check_precondition(const VariableClauseGraph& g) {
    std::vector<int> deg(g.node_count(), 0);
    std::set<std::pair<int, int>> seen;
    for (auto [v, c] : g.edges) {
        if (v < 0 || v >= g.variables || c < g.variables || c >= g.node_count()) return {false, "not bipartite"};
        if (!seen.insert({v, c}).second) return {false, "parallel literal edges"};
        ++deg[v];
        ++deg[c];
    }
    for (int c = g.variables; c < g.node_count(); ++c)
        if (deg[c] != 3) return {false, "clause node without degree 3"};
    if (!embed_edges(g.node_count(), g.edges)) return {false, "not planar"};
    if (!is_triconnected(g.node_count(), g.edges)) return {false, "not 3-connected"};
    return {true, ""};
}

SkeletonGraph build_skeleton(const VariableClauseGraph& g) {
    auto emb = embed_edges(g.node_count(), g.edges);
    if (!emb) throw std::invalid_argument("variable-clause graph is not planar");
    return build_skeleton(g, *emb);
}

SkeletonGraph build_skeleton(const VariableClauseGraph& g, const RotationSystem& emb) {
    if (Precondition p = check_precondition(g); !p.ok) throw std::invalid_argument("precondition fails: " + p.why);
    SkeletonGraph s;
    const int nv = g.variables, nc = g.clauses;
    s.var_clauses.resize(nv);
    s.clause_vars.resize(nc);
    for (int v = 0; v < nv; ++v)
        for (int d : emb.rot[v]) s.var_clauses[v].push_back(g.edges[d >> 1][1] - nv);
    for (int c = 0; c < nc; ++c) {
        if (emb.rot[nv + c].size() != 3) throw std::invalid_argument("clause node without degree 3");
        for (int j = 0; j < 3; ++j) s.clause_vars[c][j] = g.edges[emb.rot[nv + c][j] >> 1][0];
    }
    auto add_vertex = [&](std::string name) {
        s.vertex_names.push_back(std::move(name));
        return s.n++;
    };
    auto add_edge = [&](int u, int v, std::string name) {
        s.edges.push_back({u, v});
        s.edge_names.push_back(std::move(name));
        return static_cast<int>(s.edges.size()) - 1;
    };
    auto xname = [](int v) { return "x" + std::to_string(v + 1); };
    auto cname = [](int c) { return "c" + std::to_string(c + 1); };
    std::vector<std::vector<int>> xs(nv);
    std::vector<std::array<int, 3>> ys(nc);
    s.var_cycle.resize(nv);
    s.clause_cycle.resize(nc);
    for (int v = 0; v < nv; ++v) {
        const int k = static_cast<int>(s.var_clauses[v].size());
        for (int i = 0; i < k; ++i) xs[v].push_back(add_vertex("H." + xname(v) + "." + std::to_string(i)));
        for (int i = 0; i < k; ++i)
            s.var_cycle[v].push_back(
                add_edge(xs[v][i], xs[v][(i + 1) % k], "H." + xname(v) + "." + cname(s.var_clauses[v][i])));
    }
    for (int c = 0; c < nc; ++c) {
        for (int j = 0; j < 3; ++j) ys[c][j] = add_vertex("H." + cname(c) + "." + std::to_string(j));
        for (int j = 0; j < 3; ++j)
            s.clause_cycle[c][j] = add_edge(ys[c][j], ys[c][(j + 1) % 3], "H." + cname(c) + "." + xname(s.clause_vars[c][j]));
    }
    // the pipe runs between e_{v,c} and e_{c,v}; both cycles follow the same
    // rotation sense, so the first end of one meets the second end of the other
    for (auto [v, cn] : g.edges) {
        const int c = cn - nv, k = static_cast<int>(xs[v].size());
        const int i = static_cast<int>(std::find(s.var_clauses[v].begin(), s.var_clauses[v].end(), c) - s.var_clauses[v].begin());
        const int j = static_cast<int>(std::find(s.clause_vars[c].begin(), s.clause_vars[c].end(), v) - s.clause_vars[c].begin());
        const std::string base = "H.pipe." + xname(v) + "." + cname(c) + ".";
        s.pipes.push_back({add_edge(xs[v][i], ys[c][(j + 1) % 3], base + "0"),
                           add_edge(xs[v][(i + 1) % k], ys[c][j], base + "1")});
    }

    std::vector<int> deg(s.n, 0);
    for (auto [u, v] : s.edges) ++deg[u], ++deg[v];
    for (int d : deg)
        if (d != 4) throw std::logic_error("skeleton is not 4-regular");
    if (!is_triconnected(s.n, s.edges)) throw std::logic_error("skeleton is not 3-connected");
    auto r = embed_edges(s.n, s.edges);
    if (!r) throw std::logic_error("skeleton is not planar");
    s.embedding = *r;
    std::set<std::vector<int>> faces;
    for (auto& f : trace_faces(s.embedding).faces) {
        std::vector<int> vs;
        for (int d : f) vs.push_back(s.embedding.vertex_of(d));
        std::sort(vs.begin(), vs.end());
        faces.insert(vs);
    }
    auto need_face = [&](std::vector<int> vs, const char* what) {
        std::sort(vs.begin(), vs.end());
        if (!faces.count(vs)) throw std::logic_error(std::string(what) + " does not bound a face of the skeleton");
    };
    for (int v = 0; v < nv; ++v) need_face(xs[v], "variable cycle");
    for (int c = 0; c < nc; ++c) need_face({ys[c].begin(), ys[c].end()}, "clause cycle");
    for (size_t e = 0; e < g.edges.size(); ++e) {
        auto [p, q] = s.pipes[e];
        need_face({s.edges[p][0], s.edges[p][1], s.edges[q][0], s.edges[q][1]}, "pipe");
    }
    return s;
}

namespace {

struct Builder {
    GadgetInstance gi;

    int vertex(std::string name) {
        gi.a.graph.vertices.push_back(std::move(name));
        return gi.a.graph.vertex_count() - 1;
    }
    int edge(const std::string& label, int u, int v) {
        gi.a.graph.edges.push_back({label, u, v});
        int id = gi.a.graph.edge_count() - 1;
        gi.edge_of[label] = id;
        return id;
    }
    void alias(const std::string& name, const std::string& of) { gi.edge_of[name] = gi.edge_of.at(of); }
    void cross(const std::string& x, const std::string& y) {
        gi.a.crossings.push_back(std::minmax(gi.edge_of.at(x), gi.edge_of.at(y)));
    }
    GadgetInstance finish() {
        std::sort(gi.a.crossings.begin(), gi.a.crossings.end());
        return std::move(gi);
    }
};

// The ends where a_j meets b_j and e_j meets f_j, index 1..3.
struct SplitExits {
    int ab[4], ef[4];
};

SplitExits add_split(Builder& b, const std::string& p) {
    SplitExits x;
    int o[4], v[4];
    for (int j = 1; j <= 3; ++j) o[j] = b.vertex(p + "o" + std::to_string(j));
    for (int j = 1; j <= 3; ++j) b.edge(p + "l" + std::to_string(j), o[j], o[j % 3 + 1]);
    for (int j = 1; j <= 3; ++j) v[j] = b.vertex(p + "v" + std::to_string(j));
    for (int j = 1; j <= 3; ++j) b.edge(p + "t" + std::to_string(j) + std::to_string(j % 3 + 1), v[j], v[j % 3 + 1]);
    for (int j = 1; j <= 3; ++j) {
        const std::string s = std::to_string(j);
        int ab = b.vertex(p + "ab" + s), bc = b.vertex(p + "bc" + s), cd = b.vertex(p + "cd" + s);
        b.edge(p + "b" + s, ab, bc);
        b.edge(p + "c" + s, bc, cd);
        b.edge(p + "d" + s, cd, v[j]);
        int ef = b.vertex(p + "ef" + s), fg = b.vertex(p + "fg" + s), gh = b.vertex(p + "gh" + s);
        b.edge(p + "f" + s, ef, fg);
        b.edge(p + "g" + s, fg, gh);
        b.edge(p + "h" + s, gh, v[j]);
        x.ab[j] = ab;
        x.ef[j] = ef;
    }
    for (const char* path : {"pi13", "pi23", "psi13", "psi23"}) {
        int w[4];
        for (int i = 0; i < 4; ++i) w[i] = b.vertex(p + path + "." + std::to_string(i));
        for (int i = 1; i <= 3; ++i) b.edge(p + path + "." + std::to_string(i), w[i - 1], w[i]);
    }
    for (int j = 1; j <= 3; ++j) {
        const std::string s = std::to_string(j);
        b.cross(p + "l" + s, p + "b" + s);
        b.cross(p + "l" + s, p + "f" + s);
    }
    for (int j = 1; j <= 2; ++j) {
        const std::string s = std::to_string(j);
        b.cross(p + "pi" + s + "3.2", p + "psi" + s + "3.2");
        b.cross(p + "c" + s, p + "g" + s);
        b.cross(p + "c" + s, p + "pi" + s + "3.1");
        b.cross(p + "g" + s, p + "psi" + s + "3.1");
    }
    b.cross(p + "c3", p + "g3");
    b.cross(p + "c3", p + "pi13.3");
    b.cross(p + "c3", p + "pi23.3");
    b.cross(p + "g3", p + "psi13.3");
    b.cross(p + "g3", p + "psi23.3");
    return x;
}

}  // namespace

GadgetInstance split_gadget(bool with_exits) {
    Builder b;
    SplitExits x = add_split(b, "");
    if (with_exits)
        for (int j = 1; j <= 3; ++j) {
            const std::string s = std::to_string(j);
            b.edge("a" + s, b.vertex("a" + s + ".end"), x.ab[j]);
            b.edge("e" + s, b.vertex("e" + s + ".end"), x.ef[j]);
        }
    b.gi.split_gadgets = 1;
    return b.finish();
}

SizeBound expected_size(const CNF& f) {
    const long long c = static_cast<long long>(f.clauses.size()), inc = 3 * c, splits = inc;
    SizeBound s;
    // skeleton: one cycle vertex per incidence on each side, cycles plus two pipes
    // split gadget: 3 + 3 + 6 paths x 3 + 4 paths x 4 vertices; its a_1,e_1,a_2,e_2
    // clause: two paths of three new vertices per literal
    s.vertices = 2 * inc + 40 * splits + 18 * c;
    s.edges = 4 * inc + (3 + 3 + 18 + 12 + 4) * splits + 12 * c;
    s.crossings = 2 * inc + 20 * splits + (9 + 6) * c;
    return s;
}

GadgetInstance assemble(const CNF& f) {
    VariableClauseGraph g = build_variable_clause_graph(f);
    SkeletonGraph h = build_skeleton(g);
    Builder b;
    for (int v = 0; v < h.n; ++v) b.vertex(h.vertex_names[v]);
    for (size_t e = 0; e < h.edges.size(); ++e) b.edge(h.edge_names[e], h.edges[e][0], h.edges[e][1]);
    b.gi.skeleton_edges = static_cast<int>(h.edges.size());

    const int nv = g.variables, nc = g.clauses;
    auto xname = [](int v) { return "x" + std::to_string(v + 1); };
    auto cname = [](int c) { return "c" + std::to_string(c + 1); };
    const char* role = "xyz";
    // clause gadgets: paths (a,b,c) and (e,f,g) per literal; a and e come later
    std::vector<std::array<int, 3>> qa(nc), qe(nc);
    for (int c = 0; c < nc; ++c) {
        for (int r = 0; r < 3; ++r) {
            const std::string p = cname(c) + "." + role[r] + ".";
            int ab = b.vertex(p + "ab"), bc = b.vertex(p + "bc"), end = b.vertex(p + "c.end");
            b.edge(p + "b", ab, bc);
            b.edge(p + "c", bc, end);
            int ef = b.vertex(p + "ef"), fg = b.vertex(p + "fg"), gend = b.vertex(p + "g.end");
            b.edge(p + "f", ef, fg);
            b.edge(p + "g", fg, gend);
            qa[c][r] = ab;
            qe[c][r] = ef;
            const std::string cyc = h.edge_names[h.clause_cycle[c][r]];
            b.cross(p + "b", cyc);
            b.cross(p + "f", cyc);
        }
        auto q = [&](int r, const char* s) { return cname(c) + "." + role[r] + "." + s; };
        for (int r = 0; r < 3; ++r) {
            b.cross(q(r, "c"), q((r + 1) % 3, "c"));
            b.cross(q(r, "g"), q((r + 1) % 3, "g"));
        }
        b.cross(q(0, "c"), q(2, "g"));
        b.cross(q(1, "c"), q(0, "g"));
        b.cross(q(2, "c"), q(1, "g"));
    }
    std::map<std::pair<int, int>, bool> negated;
    for (size_t e = 0; e < g.edges.size(); ++e) negated[{g.edges[e][0], g.edges[e][1] - nv}] = g.negated[e];
    // variable gadgets: a ring of split gadgets, one per incident clause
    for (int v = 0; v < nv; ++v) {
        const int k = static_cast<int>(h.var_clauses[v].size());
        std::vector<std::string> pre;
        std::vector<SplitExits> ex;
        for (int i = 0; i < k; ++i) {
            pre.push_back(xname(v) + ".s" + std::to_string(i + 1) + ".");
            ex.push_back(add_split(b, pre.back()));
        }
        for (int i = 0; i < k; ++i) {
            const int n = (i + 1) % k;
            b.edge(pre[i] + "a2", ex[i].ab[2], ex[n].ab[3]);
            b.alias(pre[n] + "a3", pre[i] + "a2");
            b.edge(pre[i] + "e2", ex[i].ef[2], ex[n].ef[3]);
            b.alias(pre[n] + "e3", pre[i] + "e2");
            b.cross(pre[i] + "a2", pre[i] + "e2");

            const int c = h.var_clauses[v][i];
            const int r = static_cast<int>(std::find(h.clause_vars[c].begin(), h.clause_vars[c].end(), v) - h.clause_vars[c].begin());
            const std::string q = cname(c) + "." + role[r] + ".";
            const bool neg = negated.at({v, c});
            b.edge(pre[i] + "a1", ex[i].ab[1], neg ? qe[c][r] : qa[c][r]);
            b.alias(q + (neg ? "e" : "a"), pre[i] + "a1");
            b.edge(pre[i] + "e1", ex[i].ef[1], neg ? qa[c][r] : qe[c][r]);
            b.alias(q + (neg ? "a" : "e"), pre[i] + "e1");
            const std::string cyc = h.edge_names[h.var_cycle[v][i]];
            b.cross(pre[i] + "a1", cyc);
            b.cross(pre[i] + "e1", cyc);
        }
        b.gi.split_gadgets += k;
    }
    b.gi.clauses = nc;
    b.gi.expected = expected_size(f);
    return b.finish();
}

std::string component_shape(const CrossingGraph& c, const std::vector<int>& comp) {
    const int k = static_cast<int>(comp.size());
    std::set<int> in(comp.begin(), comp.end());
    std::vector<int> deg;
    int links = 0;
    for (int x : comp) {
        deg.push_back(static_cast<int>(c.adj[x].size()));
        links += deg.back();
    }
    links /= 2;
    std::sort(deg.begin(), deg.end());
    if (k == 2 && links == 1) return "K2";
    if (k == 3 && links == 2) return "P3";
    if (k == 4 && links == 3 && deg == std::vector<int>{1, 1, 2, 2}) return "P4";
    if (k == 6 && links == 5 && deg == std::vector<int>{1, 1, 1, 1, 3, 3}) return "double-star";
    if (k == 6 && links == 9 && deg == std::vector<int>(6, 3)) {
        // prism or K3,3; only the prism has triangles
        for (int x : comp)
            for (int y : c.adj[x])
                for (int z : c.adj[y])
                    if (z != x && std::find(c.adj[z].begin(), c.adj[z].end(), x) != c.adj[z].end()) return "prism";
    }
    return "other";
}

HardnessReport self_check(const GadgetInstance& gi) {
    HardnessReport r;
    auto problem = [&](std::string m) {
        r.ok = false;
        r.problems.push_back(std::move(m));
    };
    const ATGraph& a = gi.a;
    try {
        a.check();
    } catch (const std::exception& e) {
        problem(std::string("malformed: ") + e.what());
        return r;
    }
    if (validate(a) != Reason::None) problem("adjacent edges in a crossing pair");
    CrossingGraph cg = build_crossing_graph(a);
    auto comps = crossing_components(cg);
    std::vector<std::array<int, 2>> links;
    for (int x = 0; x < cg.nodes; ++x) {
        r.max_degree = std::max(r.max_degree, static_cast<int>(cg.adj[x].size()));
        for (int y : cg.adj[x])
            if (x < y) links.push_back({x, y});
    }
    r.crossing_graph_planar = embed_edges(cg.nodes, links).has_value();
    for (auto& comp : comps) {
        r.lambda = std::max(r.lambda, static_cast<int>(comp.size()));
        if (comp.size() < 2) continue;
        std::string s = component_shape(cg, comp);
        ++r.shapes[s];
        if (comp.size() == 6) ++r.size_six;
        for (int e : comp)
            if (e < gi.skeleton_edges && (s != "P3" || cg.adj[e].size() != 2))
                problem("component at skeleton edge " + a.graph.edges[e].id + " is not a path centred on it");
    }
    if (r.lambda != 6) problem("lambda is " + std::to_string(r.lambda));
    if (r.max_degree != 3) problem("crossing graph maximum degree is " + std::to_string(r.max_degree));
    if (!r.crossing_graph_planar) problem("crossing graph is not planar");
    if (r.shapes.count("other")) problem("component outside the catalogue");
    auto count = [&](const char* s) { return r.shapes.count(s) ? r.shapes.at(s) : 0; };
    if (count("double-star") != gi.split_gadgets) problem("double-star count differs from the split gadgets");
    if (count("prism") != gi.clauses) problem("prism count differs from the clauses");
    if (r.size_six != gi.split_gadgets + gi.clauses) problem("size-6 component count");
    if (gi.expected.vertices > 0) {
        if (a.graph.vertex_count() != gi.expected.vertices) problem("vertex count off the linear bound");
        if (a.graph.edge_count() != gi.expected.edges) problem("edge count off the linear bound");
        if (static_cast<long long>(a.crossings.size()) != gi.expected.crossings) problem("crossing count off the linear bound");
    }
    return r;
}

}  // namespace satr
