#include "satr/atcore.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace satr {

bool Graph::adjacent_edges(int e, int f) const {
    const Edge& a = edges[e];
    const Edge& b = edges[f];
    return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
}

void Graph::check() const {
    std::set<std::string> vids(vertices.begin(), vertices.end());
    if (vids.size() != vertices.size()) throw MalformedInput("duplicate vertex id");
    std::set<std::string> eids;
    std::set<std::pair<int, int>> ends;
    for (const Edge& e : edges) {
        if (!eids.insert(e.id).second) throw MalformedInput("duplicate edge id " + e.id);
        if (e.u < 0 || e.v < 0 || e.u >= vertex_count() || e.v >= vertex_count())
            throw MalformedInput("edge " + e.id + " has an undeclared endpoint");
        if (e.u == e.v) throw MalformedInput("self-loop " + e.id);
        if (!ends.insert(std::minmax(e.u, e.v)).second)
            throw MalformedInput("parallel edge " + e.id);
    }
}

void ATGraph::check() const {
    graph.check();
    std::set<std::pair<int, int>> seen;
    for (auto [e, f] : crossings) {
        if (e < 0 || f < 0 || e >= graph.edge_count() || f >= graph.edge_count())
            throw MalformedInput("crossing references unknown edge");
        if (e == f) throw MalformedInput("edge crossing itself");
        if (!seen.insert(std::minmax(e, f)).second) throw MalformedInput("duplicate crossing pair");
    }
}

char color_char(Color c) {
    switch (c) {
        case Color::Red: return 'r';
        case Color::Blue: return 'b';
        case Color::Purple: return 'p';
    }
    return '?';
}

const char* kind_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::K2: return "K2";
        case ComponentKind::P3: return "P3";
        case ComponentKind::K3: return "K3";
    }
    return "?";
}

const char* reason_name(Reason r) {
    switch (r) {
        case Reason::None: return "None";
        case Reason::AdjacentCrossingPair: return "AdjacentCrossingPair";
        case Reason::NonPlanarContraction: return "NonPlanarContraction";
        case Reason::CutVertexConflict: return "CutVertexConflict";
        case Reason::ConstraintConflict: return "ConstraintConflict";
        case Reason::SynchronizationConflict: return "SynchronizationConflict";
        case Reason::NonPlanarExpansion: return "NonPlanarExpansion";
        case Reason::NoRealization: return "NoRealization";
    }
    return "?";
}

CrossingGraph build_crossing_graph(const ATGraph& a) {
    CrossingGraph c;
    c.nodes = a.graph.edge_count();
    c.adj.assign(c.nodes, {});
    for (auto [e, f] : a.crossings) {
        c.adj[e].push_back(f);
        c.adj[f].push_back(e);
    }
    for (auto& l : c.adj) std::sort(l.begin(), l.end());
    return c;
}

std::vector<std::vector<int>> crossing_components(const CrossingGraph& c) {
    std::vector<int> comp(c.nodes, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < c.nodes; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> members{s};
        comp[s] = static_cast<int>(out.size());
        for (size_t i = 0; i < members.size(); ++i)
            for (int w : c.adj[members[i]])
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    members.push_back(w);
                }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

int lambda(const ATGraph& a) {
    if (a.graph.edge_count() == 0) return 0;
    int best = 0;
    for (auto& m : crossing_components(build_crossing_graph(a)))
        best = std::max(best, static_cast<int>(m.size()));
    return best;
}

std::vector<CrossingComponent> classify_components(const CrossingGraph& c) {
    std::vector<CrossingComponent> out;
    for (auto& m : crossing_components(c)) {
        if (m.size() == 1) continue;
        if (m.size() > 3)
            throw ComponentTooLarge("crossing component with " + std::to_string(m.size()) + " edges");
        CrossingComponent cc;
        cc.edges = m;
        if (m.size() == 2) {
            cc.kind = ComponentKind::K2;
            cc.colors = {Color::Red, Color::Blue};
        } else {
            int links = 0;
            for (int e : m) links += static_cast<int>(c.adj[e].size());
            if (links == 6) {
                cc.kind = ComponentKind::K3;
                cc.colors = {Color::Red, Color::Blue, Color::Purple};
            } else {
                cc.kind = ComponentKind::P3;
                int mid = -1;
                for (int e : m)
                    if (c.adj[e].size() == 2) mid = e;
                std::vector<int> ends;
                for (int e : m)
                    if (e != mid) ends.push_back(e);
                cc.edges = {ends[0], ends[1], mid};
                cc.colors = {Color::Red, Color::Blue, Color::Purple};
            }
        }
        out.push_back(std::move(cc));
    }
    return out;
}

Reason validate(const ATGraph& a) {
    for (auto [e, f] : a.crossings)
        if (a.graph.adjacent_edges(e, f)) return Reason::AdjacentCrossingPair;
    return Reason::None;
}

}  // namespace satr
