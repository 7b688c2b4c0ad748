#include "satr/embedding.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <numeric>

namespace satr {

bool RotationSystem::well_formed() const {
    if (static_cast<int>(rot.size()) != n) return false;
    std::vector<char> seen(2 * ends.size(), 0);
    for (int v = 0; v < n; ++v)
        for (int d : rot[v]) {
            if (d < 0 || d >= static_cast<int>(seen.size()) || seen[d]) return false;
            if (vertex_of(d) != v) return false;
            seen[d] = 1;
        }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

namespace {

std::vector<int> dart_positions(const RotationSystem& r) {
    std::vector<int> pos(2 * r.ends.size(), -1);
    for (int v = 0; v < r.n; ++v)
        for (int i = 0; i < static_cast<int>(r.rot[v].size()); ++i) pos[r.rot[v][i]] = i;
    return pos;
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void join(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

FaceSet trace_faces(const RotationSystem& r) {
    std::vector<int> pos = dart_positions(r);
    const int darts = static_cast<int>(pos.size());
    std::vector<char> used(darts, 0);
    FaceSet fs;
    for (int s = 0; s < darts; ++s) {
        if (used[s]) continue;
        std::vector<int> face;
        int d = s;
        while (!used[d]) {
            used[d] = 1;
            face.push_back(d);
            int t = d ^ 1;
            const auto& rv = r.rot[r.vertex_of(t)];
            d = rv[(pos[t] + 1) % rv.size()];
        }
        fs.faces.push_back(std::move(face));
    }
    return fs;
}

int genus_defect(const RotationSystem& r) {
    Dsu dsu(r.n);
    for (auto& e : r.ends) dsu.join(e[0], e[1]);
    std::vector<long> chi(r.n, 0);
    std::vector<char> has_edge(r.n, 0);
    for (int v = 0; v < r.n; ++v) chi[dsu.find(v)] += 1;
    for (auto& e : r.ends) {
        chi[dsu.find(e[0])] -= 1;
        has_edge[dsu.find(e[0])] = 1;
    }
    for (auto& f : trace_faces(r).faces) chi[dsu.find(r.vertex_of(f[0]))] += 1;
    long defect = 0;
    for (int v = 0; v < r.n; ++v) {
        if (dsu.find(v) != v) continue;
        long c = has_edge[v] ? chi[v] : chi[v] + 1;  // a lone vertex bounds one face
        defect += 2 - c;
    }
    return static_cast<int>(defect);
}

bool euler_check(const RotationSystem& r) { return r.well_formed() && genus_defect(r) == 0; }

std::optional<RotationSystem> embed_edges(int n, const std::vector<std::array<int, 2>>& edges) {
    using namespace boost;
    using G = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>,
                             property<edge_index_t, int>>;
    G g(n);
    for (size_t i = 0; i < edges.size(); ++i) add_edge(edges[i][0], edges[i][1], static_cast<int>(i), g);
    using EmbeddingStorage = std::vector<std::vector<graph_traits<G>::edge_descriptor>>;
    EmbeddingStorage storage(num_vertices(g));
    auto emb = make_iterator_property_map(storage.begin(), get(vertex_index, g));
    if (!boyer_myrvold_planarity_test(boyer_myrvold_params::graph = g, boyer_myrvold_params::embedding = emb))
        return std::nullopt;
    RotationSystem r;
    r.n = n;
    r.ends = edges;
    r.rot.assign(n, {});
    for (int v = 0; v < n; ++v)
        for (auto ed : storage[v]) {
            int e = get(edge_index, g, ed);
            int s = edges[e][0] == v ? 0 : 1;
            r.rot[v].push_back(2 * e + s);
        }
    return r;
}

bool is_planar(const Graph& g) {
    std::vector<std::array<int, 2>> es;
    for (auto& e : g.edges) es.push_back({e.u, e.v});
    return embed_edges(g.vertex_count(), es).has_value();
}

RotationSystem planar_embedding(const Graph& g) {
    std::vector<std::array<int, 2>> es;
    for (auto& e : g.edges) es.push_back({e.u, e.v});
    auto r = embed_edges(g.vertex_count(), es);
    if (!r) throw NotPlanar("graph is not planar");
    return *r;
}

void mirror(RotationSystem& r) {
    for (auto& l : r.rot) std::reverse(l.begin(), l.end());
}

}  // namespace satr
