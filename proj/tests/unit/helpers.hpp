#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "satr/atcore.hpp"

namespace testutil {

inline satr::ATGraph make_at(int n, const std::vector<std::array<int, 2>>& edges,
                             const std::vector<std::pair<int, int>>& crossings = {}) {
    satr::ATGraph a;
    for (int i = 0; i < n; ++i) a.graph.vertices.push_back(std::to_string(i));
    for (size_t i = 0; i < edges.size(); ++i)
        a.graph.edges.push_back({"e" + std::to_string(i), edges[i][0], edges[i][1]});
    for (auto [e, f] : crossings) a.crossings.push_back({std::min(e, f), std::max(e, f)});
    return a;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct AtlasGraph {
    int n = 0;
    std::vector<std::array<int, 2>> edges;
};

inline std::vector<AtlasGraph> load_atlas(const std::string& path) {
    std::vector<AtlasGraph> out;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        AtlasGraph g;
        ls >> g.n;
        std::string tok;
        while (ls >> tok) {
            auto dash = tok.find('-');
            g.edges.push_back({std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1))});
        }
        out.push_back(g);
    }
    return out;
}

}  // namespace testutil
