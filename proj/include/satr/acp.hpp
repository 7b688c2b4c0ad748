#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "satr/atcore.hpp"
#include "satr/constraints.hpp"
#include "satr/embedding.hpp"
#include "satr/pqtree.hpp"
#include "satr/spqr.hpp"

namespace satr {

// A pipeline precondition that should hold by construction failed.
struct StructureViolation : std::logic_error {
    using std::logic_error::logic_error;
};
// A produced embedding or certificate did not check out.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

// Constraint slot of one vertex.  Darts (and tree labels) are edge ids of
// the graph the slot lives in.
struct Slot {
    enum class Kind { None, Alt, PQ };
    Kind kind = Kind::None;
    AlternationConstraint alt;
    PQTree tree;

    static Slot none() { return {}; }
    static Slot of(AlternationConstraint c);
    static Slot of(PQTree t);
    // rotation lists exactly the slot's darts
    bool holds(const std::vector<int>& rotation) const;
};

// Where an edge of the contracted graph comes from.
struct EdgeOrigin {
    int edge = -1;  // edge of the input graph
    int comp = -1;  // crossing component, -1 for uncrossed edges
    int end = 0;    // for portions: 0 at the input edge's u, 1 at its v
};

struct ACPInstance {
    int n = 0;           // input vertices, then crossing vertices, then subdivisions
    int input_n = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<EdgeOrigin> origin;  // parallel to edges
    std::vector<CrossingComponent> comps;
    std::vector<int> crossing_vertex;  // per component
    std::map<int, Slot> slots;         // darts are edge ids of this instance
};

// One 2-connected instance over local ids.
struct GACP {
    int n = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<char> active;      // edges removed by surgery stay as inactive ids
    std::vector<int> vid;          // local vertex -> contracted-graph vertex
    std::vector<int> eid;          // local edge -> contracted-graph edge, -1 for added edges
    std::vector<Slot> slot;        // per local vertex, darts are local edge ids
    std::vector<std::vector<int>> inc;  // per local vertex, every edge id

    int add_vertex(int global);
    int add_edge(int u, int v, int global);
    std::vector<int> incident(int v) const;  // active edges at v
};

// Lines "LEMMA <id> vertex=<v> action=<...>".
using Trace = std::vector<std::string>;

ACPInstance contract_crossings(const ATGraph& a, const std::vector<CrossingComponent>& comps);
bool planarity_gate(const ACPInstance& h);

// Derived constraint at a cut vertex: the slot of one block copy.
struct CutDecision {
    bool feasible = true;
    std::vector<std::vector<int>> groups;  // darts per block
    std::vector<Slot> copies;              // parallel to groups
};
CutDecision split_cut_vertex(const AlternationConstraint& c, const std::vector<std::vector<int>>& groups);

struct SplitResult {
    bool feasible = true;
    std::vector<GACP> blocks;
};
SplitResult split_biconnected(const ACPInstance& h, Trace* trace = nullptr);

// Consecutive dart pairs at v certified by the decomposition.
std::vector<std::pair<int, int>> find_consecutive_pairs(const GACP& g, int v);

// Rotation system of the block's active edges satisfying every slot, or
// nullopt (with the reason) when none exists.
std::optional<RotationSystem> solve_block(GACP g, Trace* trace = nullptr, Reason* why = nullptr);
// Only tree slots allowed.
std::optional<RotationSystem> expand_and_embed(const GACP& g, Reason* why = nullptr);

// Untangled drawing of one crossing vertex.  Portions are (role, end)
// encoded 2*role+end; roles follow the component's edge order.
struct Untangled {
    std::vector<std::pair<int, int>> dummies;       // role pairs
    std::vector<std::vector<int>> routes;           // per role, dummies from end 0 to end 1
    std::vector<std::vector<std::array<int, 3>>> rotations;  // per dummy: (role, seg, end)
};
// nullopt when the portion rotation admits no untangled drawing.
std::optional<Untangled> untangle(ComponentKind kind, const std::vector<int>& portions);
// Table text: one line per valid portion rotation.
std::string untangle_table_text();
// The same table computed with the brute-force oracle.
std::string generate_untangle_table();

// Certificate from an embedding of the contracted graph: crossing vertices
// are expanded by the table, portions rejoined.  Not canonicalized.
PlanarizationCertificate certificate_from_contracted(const ATGraph& a, const ACPInstance& h, const RotationSystem& r);

Verdict solve(const ATGraph& a, Trace* trace = nullptr);

}  // namespace satr
