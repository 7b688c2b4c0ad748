#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "satr/atcore.hpp"
#include "satr/embedding.hpp"

namespace satr {

struct NotBiconnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VertexNotInSkeleton : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAdjacent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// SPQR-tree of a biconnected multigraph on vertices 0..n-1.  Every real edge
// starts in its own Q-node; skeleton vertices are graph vertex ids.
class SPQRTree {
public:
    enum class Type { S, P, Q, R };
    struct SkelEdge {
        int u = -1, v = -1;
        int twin_node = -1, twin_edge = -1;
        int real = -1;  // graph edge id when the edge is real (Q-nodes, merged nodes)
        bool is_virtual() const { return twin_node >= 0; }
    };
    struct Node {
        Type type = Type::Q;
        bool alive = true;
        std::vector<SkelEdge> edges;
    };

    int n = 0;
    std::vector<std::array<int, 2>> real_ends;
    std::vector<Node> nodes;

    std::vector<int> alive_nodes() const;
    std::vector<int> neighbors(int node) const;
    // sorted distinct skeleton vertices
    std::vector<int> skeleton_vertices(int node) const;
    // graph edge represented by skeleton edge e: its own real id, or the id
    // of the Q-node behind it; -1 for other virtual edges
    int real_of(int node, int e) const;
    // skeleton edges of node incident to v, with the number of real edges at v
    // routed through each
    std::vector<std::pair<int, int>> edge_loads(int node, int v) const;
    // graph edges at v inside the part of the graph behind skeleton edge e
    std::vector<int> edges_behind(int node, int e, int v) const;
    // real graph edges in the part of the graph behind skeleton edge e
    std::vector<int> all_edges_behind(int node, int e) const;

    // local graph of a skeleton: vertices (global ids) and edges over them
    struct Skeleton {
        std::vector<int> verts;
        std::vector<std::array<int, 2>> ends;  // local vertex indices, per skeleton edge
        int local(int v) const;
    };
    Skeleton skeleton(int node) const;

    void check() const;  // structural invariants, throws std::logic_error
    std::string dump() const;

    // node whose skeleton holds real edge r
    int home(int r) const { return home_[r]; }

    // Rebuild the traversal index after changing nodes by hand.
    void reindex();

private:
    std::vector<int> parent_, tin_, tout_, home_;
    std::vector<std::vector<int>> tins_at_;  // per vertex, sorted home times of incident edges
    int count_in(int v, int lo, int hi) const;
    friend void merge_nodes(SPQRTree&, int, int);
};

// Throws NotBiconnected.
SPQRTree build_spqr(int n, const std::vector<std::array<int, 2>>& edges);
SPQRTree build_spqr(const Graph& g);

// sorted non-increasing
std::vector<int> distribution_vector(const SPQRTree& t, int node, int v);

// nu is absorbed into mu (mu keeps its index, nu dies).  Throws NotAdjacent.
void merge_nodes(SPQRTree& t, int mu, int nu);

// Embeddings: one rotation system per node over its local skeleton (empty
// for Q-nodes).  A default choice: P edges in index order, R from the
// planarity test, S trivial.
std::vector<RotationSystem> default_skeleton_embeddings(const SPQRTree& t);
RotationSystem skeleton_embedding(const SPQRTree& t, int node);
// Glue skeleton embeddings along twin edges into a rotation system of the
// graph (darts 2e+s over real_ends).
RotationSystem compose_embedding(const SPQRTree& t, const std::vector<RotationSystem>& emb);

bool is_biconnected(int n, const std::vector<std::array<int, 2>>& edges);

}  // namespace satr
