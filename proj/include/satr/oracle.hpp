#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "satr/atcore.hpp"

namespace satr {

struct LimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleLimits {
    int max_nodes = 96;                      // planarization vertices
    int max_darts = 512;                     // twice the planarization edges
    long long max_rotations = 200'000'000;  // partial rotation systems visited
};

struct OracleOptions {
    OracleLimits limits;
    // restrict to rotations whose mirror-canonical half contains the rotation
    // of one maximum-degree vertex
    bool symmetry = true;
    // fixed rotation (cyclic order of incident edge ids) at real vertices;
    // disables the symmetry reduction
    std::map<int, std::vector<int>> pinned;
    // skip crossing orders whose planarization with wheel-shaped crossings
    // is nonplanar (sound: such orders have no realization)
    bool planarity_filter = true;
};

struct OracleStats {
    long long orders = 0;     // crossing-order choices tried
    long long rotations = 0;  // partial rotation systems visited
};

Verdict brute_force_satr(const ATGraph& a, const OracleLimits& lim = {});
Verdict brute_force_satr(const ATGraph& a, const OracleOptions& opt, OracleStats* stats = nullptr);

// Every accepting certificate, canonicalized and deduplicated.
std::vector<PlanarizationCertificate> enumerate_realizations(const ATGraph& a, const OracleLimits& lim = {});
std::vector<PlanarizationCertificate> enumerate_realizations(const ATGraph& a, const OracleOptions& opt);

}  // namespace satr
