#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace satr {

// Thrown for structurally broken input (bad JSON, unknown ids, loops, ...).
struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ComponentTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    std::string id;
    int u = -1;
    int v = -1;
};

struct Graph {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    bool numeric_ids = false;  // vertex ids were JSON integers

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int other(int e, int x) const { return edges[e].u == x ? edges[e].v : edges[e].u; }
    bool adjacent_edges(int e, int f) const;
    // throws MalformedInput on loops, parallel edges, duplicate ids
    void check() const;
};

struct ATGraph {
    Graph graph;
    std::vector<std::pair<int, int>> crossings;  // edge indices, first < second

    void check() const;
};

struct CrossingGraph {
    int nodes = 0;
    std::vector<std::vector<int>> adj;
};

enum class Color { Red = 0, Blue = 1, Purple = 2 };
char color_char(Color c);

enum class ComponentKind { K2, P3, K3 };
const char* kind_name(ComponentKind k);

struct CrossingComponent {
    ComponentKind kind;
    std::vector<int> edges;
    std::vector<Color> colors;  // parallel to edges
};

CrossingGraph build_crossing_graph(const ATGraph& a);
int lambda(const ATGraph& a);
std::vector<std::vector<int>> crossing_components(const CrossingGraph& c);
std::vector<CrossingComponent> classify_components(const CrossingGraph& c);

enum class Reason {
    None,
    AdjacentCrossingPair,
    NonPlanarContraction,
    CutVertexConflict,
    ConstraintConflict,
    SynchronizationConflict,
    NonPlanarExpansion,
    NoRealization,
};
const char* reason_name(Reason r);

Reason validate(const ATGraph& a);

// A dart of the planarization: the end `end` (0 = toward route start) of
// segment `seg` of edge `edge`.  Segment i runs from node i to node i+1 of
// the route u, d_1, ..., d_k, v.
struct CertDart {
    int edge = -1;
    int seg = 0;
    int end = 0;
    auto operator<=>(const CertDart&) const = default;
};

struct PlanarizationCertificate {
    std::vector<std::pair<int, int>> dummies;          // crossing pair per dummy
    std::vector<std::vector<int>> routes;              // per edge, dummy indices
    std::vector<std::vector<CertDart>> rotations;      // vertices, then dummies
};

struct MalformedCertificate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool check_certificate(const ATGraph& a, const PlanarizationCertificate& w);
// Rotate every cyclic order so it starts at its smallest dart, darts
// compared by (edge id, segment, end).
void canonicalize(const Graph& g, PlanarizationCertificate& w);

struct Verdict {
    bool yes = false;
    std::optional<PlanarizationCertificate> witness;
    Reason reason = Reason::None;
};

}  // namespace satr
