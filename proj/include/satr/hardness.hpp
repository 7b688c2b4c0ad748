#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "satr/atcore.hpp"
#include "satr/embedding.hpp"

namespace satr {

struct Literal {
    int var = 0;  // 0-based
    bool negated = false;
};

struct CNF {
    int variables = 0;
    std::vector<std::array<Literal, 3>> clauses;
};

// DIMACS "p cnf" text; every clause must have three literals of distinct
// variables.  Throws MalformedInput.
CNF parse_dimacs(const std::string& text);
std::string to_dimacs(const CNF& f);

// Nodes 0..variables-1 are variables, then one node per clause.
struct VariableClauseGraph {
    int variables = 0;
    int clauses = 0;
    std::vector<std::array<int, 2>> edges;  // (variable node, clause node)
    std::vector<bool> negated;              // literal polarity per edge

    int node_count() const { return variables + clauses; }
};

VariableClauseGraph build_variable_clause_graph(const CNF& f);

struct Precondition {
    bool ok = false;
    std::string why;
};
// planar, 3-connected, and bipartite with clause nodes of degree 3
Precondition check_precondition(const VariableClauseGraph& g);

bool is_triconnected(int n, const std::vector<std::array<int, 2>>& edges);

struct SkeletonGraph {
    int n = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::string> vertex_names, edge_names;
    std::vector<std::vector<int>> var_clauses;    // clauses around each variable, embedding order
    std::vector<std::vector<int>> var_cycle;      // edge e_{v,c_i} per position
    std::vector<std::array<int, 3>> clause_vars;  // variables around each clause
    std::vector<std::array<int, 3>> clause_cycle; // edge e_{c,v_j} per position
    std::vector<std::array<int, 2>> pipes;        // per edge of the variable-clause graph
    RotationSystem embedding;
};

// Throws std::invalid_argument when the precondition fails, std::logic_error
// when the built graph is not 4-regular, 3-connected and plane with the
// expected faces.
SkeletonGraph build_skeleton(const VariableClauseGraph& g, const RotationSystem& emb);
SkeletonGraph build_skeleton(const VariableClauseGraph& g);

// Expected sizes of assemble(f), linear in the number of clauses.
struct SizeBound {
    long long vertices = 0, edges = 0, crossings = 0;
};
SizeBound expected_size(const CNF& f);

struct GadgetInstance {
    ATGraph a;
    std::map<std::string, int> edge_of;  // element symbol (and aliases) -> edge index
    int split_gadgets = 0;
    int clauses = 0;
    int skeleton_edges = 0;  // edges 0..skeleton_edges-1 come from the skeleton
    SizeBound expected;      // zero when not built from a formula
};

GadgetInstance assemble(const CNF& f);

// One split gadget on its own.  Without exits the pendant edges a_j and e_j
// are left out; they carry no crossing there.
GadgetInstance split_gadget(bool with_exits = true);

struct HardnessReport {
    bool ok = true;
    int lambda = 0;
    int max_degree = 0;
    bool crossing_graph_planar = false;
    std::map<std::string, int> shapes;  // component shape -> count
    int size_six = 0;
    std::vector<std::string> problems;
};

// K2, P3, P4, double-star, prism, or other
std::string component_shape(const CrossingGraph& c, const std::vector<int>& comp);

HardnessReport self_check(const GadgetInstance& gi);

}  // namespace satr
