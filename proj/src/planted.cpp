#include "satr/planted.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "satr/acp.hpp"

namespace satr {

namespace {

using Face = std::vector<int>;

std::vector<int> sorted_positions(std::mt19937_64& rng, int k, int t) {
    std::vector<int> all(k);
    for (int i = 0; i < k; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(t);
    std::sort(all.begin(), all.end());
    return all;
}

// faces [w, f[p_a], ..., f[p_{a+1}]] around a new vertex w
void star(const Face& f, const std::vector<int>& pos, int w, std::vector<Face>& out) {
    const int k = static_cast<int>(f.size());
    const int t = static_cast<int>(pos.size());
    for (int a = 0; a < t; ++a) {
        Face g{w};
        int i = pos[a], j = pos[(a + 1) % t];
        for (int s = i;; s = (s + 1) % k) {
            g.push_back(f[s]);
            if (s == j) break;
        }
        out.push_back(std::move(g));
    }
}

}  // namespace

Planted planted_instance(const PlantedOptions& opt, std::uint64_t seed) {
    if (opt.n < 4) throw std::invalid_argument("planted host needs at least 4 vertices");
    std::mt19937_64 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    std::vector<std::array<int, 2>> edges;
    std::set<std::pair<int, int>> have;
    auto add_edge = [&](int u, int v) {
        edges.push_back({u, v});
        have.insert(std::minmax(u, v));
    };
    // start from a cycle; its two sides are the first faces
    const int start = std::min(opt.n, 6);
    std::vector<Face> faces(2);
    for (int i = 0; i < start; ++i) {
        add_edge(i, (i + 1) % start);
        faces[0].push_back(i);
        faces[1].push_back(start - 1 - i);
    }
    int n = start;
    while (n < opt.n) {
        int fi = uni(0, static_cast<int>(faces.size()) - 1);
        Face f = faces[fi];
        const int k = static_cast<int>(f.size());
        faces[fi] = faces.back();
        faces.pop_back();
        if (std::uniform_real_distribution<double>(0, 1)(rng) < opt.ear_rate) {
            auto pos = sorted_positions(rng, k, 2);
            const int len = std::min(uni(1, 3), opt.n - n);
            std::vector<int> path;
            for (int i = 0; i < len; ++i) path.push_back(n++);
            add_edge(f[pos[0]], path.front());
            for (int i = 0; i + 1 < len; ++i) add_edge(path[i], path[i + 1]);
            add_edge(path.back(), f[pos[1]]);
            Face a, b;
            for (int s = pos[0];; s = (s + 1) % k) {
                a.push_back(f[s]);
                if (s == pos[1]) break;
            }
            a.insert(a.end(), path.rbegin(), path.rend());
            for (int s = pos[1];; s = (s + 1) % k) {
                b.push_back(f[s]);
                if (s == pos[0]) break;
            }
            b.insert(b.end(), path.begin(), path.end());
            faces.push_back(std::move(a));
            faces.push_back(std::move(b));
            continue;
        }
        int t = uni(2, std::min(opt.max_attach, k));
        auto pos = sorted_positions(rng, k, t);
        int w = n++;
        for (int p : pos) add_edge(w, f[p]);
        star(f, pos, w, faces);
    }

    // crossing patterns, one per chosen face, drawn as a crossing vertex
    Planted out;
    std::vector<std::pair<int, int>> crossings;
    std::vector<Face> final_faces;
    std::vector<std::vector<int>> pattern_edges;  // per pattern, role order
    std::vector<int> pattern_kind;
    std::shuffle(faces.begin(), faces.end(), rng);
    const int wsum = opt.weights[0] + opt.weights[1] + opt.weights[2];
    int next_x = n;  // crossing vertices get ids after the host
    std::vector<int> pattern_vertex;
    for (const Face& f : faces) {
        const int k = static_cast<int>(f.size());
        bool use = wsum > 0 && std::uniform_real_distribution<double>(0, 1)(rng) < opt.pattern_rate;
        int kind = -1;
        if (use) {
            int r = uni(0, wsum - 1);
            kind = r < opt.weights[0] ? 0 : r < opt.weights[0] + opt.weights[1] ? 1 : 2;
            if (k < (kind == 0 ? 4 : 6)) kind = -1;
        }
        std::vector<std::array<int, 2>> chords;
        std::vector<int> pos;
        if (kind >= 0) {
            pos = sorted_positions(rng, k, kind == 0 ? 4 : 6);
            auto v = [&](int i) { return f[pos[i]]; };
            if (kind == 0) chords = {{v(0), v(2)}, {v(1), v(3)}};
            else if (kind == 1) chords = {{v(1), v(5)}, {v(2), v(4)}, {v(0), v(3)}};  // red, blue, purple
            else chords = {{v(0), v(3)}, {v(1), v(4)}, {v(2), v(5)}};
            for (auto [a, b] : chords)
                if (have.count(std::minmax(a, b))) kind = -1;
        }
        if (kind < 0) {
            final_faces.push_back(f);
            continue;
        }
        std::vector<int> ids;
        for (auto [a, b] : chords) {
            ids.push_back(static_cast<int>(edges.size()));
            add_edge(a, b);
        }
        if (kind == 0) crossings.push_back({ids[0], ids[1]});
        else if (kind == 1) crossings.insert(crossings.end(), {{ids[0], ids[2]}, {ids[1], ids[2]}});
        else crossings.insert(crossings.end(), {{ids[0], ids[1]}, {ids[0], ids[2]}, {ids[1], ids[2]}});
        pattern_edges.push_back(ids);
        pattern_kind.push_back(kind);
        pattern_vertex.push_back(next_x);
        star(f, pos, next_x++, final_faces);
        ++out.patterns[kind];
    }

    ATGraph& a = out.a;
    for (int i = 0; i < n; ++i) a.graph.vertices.push_back(std::to_string(i));
    a.graph.numeric_ids = true;
    for (size_t e = 0; e < edges.size(); ++e)
        a.graph.edges.push_back({"e" + std::to_string(e), edges[e][0], edges[e][1]});
    for (auto [e, f] : crossings) a.crossings.push_back(std::minmax(e, f));
    std::sort(a.crossings.begin(), a.crossings.end());

    // embedding of the contracted graph read off the faces
    auto comps = classify_components(build_crossing_graph(a));
    ACPInstance h = contract_crossings(a, comps);
    std::vector<int> to_h(next_x);
    for (int v = 0; v < n; ++v) to_h[v] = v;
    {
        std::unordered_map<int, int> comp_of_edge;
        for (size_t i = 0; i < h.comps.size(); ++i) comp_of_edge[h.comps[i].edges[0]] = static_cast<int>(i);
        for (size_t p = 0; p < pattern_edges.size(); ++p) {
            int found = -1;
            for (int e : pattern_edges[p])
                if (comp_of_edge.count(e)) found = comp_of_edge[e];
            to_h[pattern_vertex[p]] = h.crossing_vertex.at(found);
        }
    }
    std::map<std::pair<int, int>, int> edge_id;
    for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) {
        if (!edge_id.emplace(std::make_pair(h.edges[e][0], h.edges[e][1]), e).second ||
            !edge_id.emplace(std::make_pair(h.edges[e][1], h.edges[e][0]), e).second)
            throw std::logic_error("planted contraction has parallel edges");
    }
    std::vector<std::map<int, int>> succ(h.n);
    for (const Face& f : final_faces) {
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            int pa = to_h[f[(i + k - 1) % k]], b = to_h[f[i]], c = to_h[f[(i + 1) % k]];
            succ[b][pa] = c;
        }
    }
    RotationSystem r;
    r.n = h.n;
    r.ends = h.edges;
    r.rot.assign(h.n, {});
    for (int v = 0; v < h.n; ++v) {
        if (succ[v].empty()) continue;
        int first = succ[v].begin()->first, w = first;
        do {
            int e = edge_id.at({v, w});
            r.rot[v].push_back(2 * e + (h.edges[e][0] == v ? 0 : 1));
            w = succ[v].at(w);
        } while (w != first);
        if (r.rot[v].size() != succ[v].size()) throw std::logic_error("planted rotation is not a single cycle");
    }
    out.witness = certificate_from_contracted(a, h, r);
    canonicalize(a.graph, out.witness);
    return out;
}

}  // namespace satr
