#pragma once

// Shared helpers of the acp pipeline; not part of the public interface.

#include <map>
#include <vector>

#include "satr/acp.hpp"

namespace satr::detail {

// SPQR-tree of the active part of a GACP, queried in local ids.
class TreeView {
public:
    explicit TreeView(const GACP& g);

    SPQRTree t;
    std::vector<int> tv_of, lv_of;  // local vertex <-> tree vertex (-1 if absent)
    std::vector<int> te_of, le_of;  // local edge <-> tree edge

    bool has(int v) const { return tv_of[v] >= 0; }
    // non-Q nodes whose skeleton holds local vertex v
    std::vector<int> nodes_at(int v) const;
    // skeleton edges of node incident to local vertex v
    std::vector<int> skel_at(int node, int v) const;
    // local edges at v inside the part behind skeleton edge e of node
    std::vector<int> behind(int node, int e, int v) const;
    // every local edge behind skeleton edge e
    std::vector<int> all_behind(int node, int e) const;
    // the two skeleton vertices of a P-node, local ids
    std::pair<int, int> poles(int node) const;
    // skeleton rotation at v of an R-node, as skeleton edge indices
    std::vector<int> r_rotation(int node, int v) const;

private:
    std::vector<std::vector<std::pair<int, int>>> inc_;  // tree vertex -> (node, skeleton edge), sorted
    mutable std::map<int, std::pair<SPQRTree::Skeleton, RotationSystem>> r_emb_;
};

// children of a P-node seen from its poles
struct PFrame {
    int v = -1, u = -1;
    std::vector<std::vector<int>> at_v, at_u;  // local edges per child
    std::vector<char> flippable;
    std::vector<int> skel;  // skeleton edge per child, valid while the tree lives
    int size() const { return static_cast<int>(at_v.size()); }
};
PFrame make_frame(const TreeView& tv, int node, int v);

// Slot for a constraint with some darts moved elsewhere: each removed dart
// may be re-inserted anywhere, or all as one run when together.  nullopt
// when never satisfiable.  Degree-4 results become their trees.
std::optional<Slot> derive_removed(const AlternationConstraint& c, const std::vector<int>& removed, bool together);

std::vector<std::pair<int, int>> consecutive_pairs_in(const TreeView& tv, const GACP& g, int v);

// no two groups alternate around the cyclic order
bool non_interleaving(const std::vector<int>& order, const std::vector<std::vector<int>>& groups);

// edges of a rotation given as darts 2e+s
std::vector<int> edges_of(const std::vector<int>& darts);

// cyclic orders of 0..k-1 starting with 0
std::vector<std::vector<int>> cyclic_orders(int k);

}  // namespace satr::detail
