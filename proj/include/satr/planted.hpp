#pragma once

#include <cstdint>

#include "satr/atcore.hpp"

namespace satr {

struct PlantedOptions {
    int n = 100;                 // host vertices
    double pattern_rate = 0.3;   // chance that a face receives a crossing pattern
    int weights[3] = {1, 1, 1};  // relative frequency of K2, P3, K3 patterns
    int max_attach = 3;          // a new host vertex joins 2..max_attach face vertices
    double ear_rate = 0.5;       // chance that a step adds a path across a face instead
};

struct Planted {
    ATGraph a;
    PlanarizationCertificate witness;  // canonicalized
    int patterns[3] = {0, 0, 0};
};

// Random 2-connected plane host grown by stars and paths inside faces; crossing
// patterns are drawn inside distinct faces, so the instance is YES and the
// witness is built alongside.
Planted planted_instance(const PlantedOptions& opt, std::uint64_t seed);

}  // namespace satr
