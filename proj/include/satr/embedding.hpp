#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "satr/atcore.hpp"

namespace satr {

struct NotPlanar : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dart 2e+s is edge e seen from its endpoint ends[e][s]; its twin is d^1.
struct RotationSystem {
    int n = 0;
    std::vector<std::array<int, 2>> ends;
    std::vector<std::vector<int>> rot;

    int edge_count() const { return static_cast<int>(ends.size()); }
    int vertex_of(int d) const { return ends[d >> 1][d & 1]; }
    // every dart exactly once, at the vertex it belongs to
    bool well_formed() const;
};

struct FaceSet {
    std::vector<std::vector<int>> faces;
};

FaceSet trace_faces(const RotationSystem& r);
// V - E + F = 2 for every connected component
bool euler_check(const RotationSystem& r);
int genus_defect(const RotationSystem& r);  // sum over components of (2 - V + E - F)

std::optional<RotationSystem> embed_edges(int n, const std::vector<std::array<int, 2>>& edges);
bool is_planar(const Graph& g);
RotationSystem planar_embedding(const Graph& g);

// Reverse every rotation.
void mirror(RotationSystem& r);

}  // namespace satr
