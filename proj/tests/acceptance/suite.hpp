#pragma once

// Exhaustive instance family: every crossing set over every connected host
// with at most 6 vertices and 9 edges, with at most two nontrivial crossing
// components of at most three edges each.

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "../unit/helpers.hpp"

namespace suite {

inline bool small_components(int m, const std::vector<std::pair<int, int>>& xs) {
    std::vector<int> up(m);
    std::iota(up.begin(), up.end(), 0);
    std::function<int(int)> find = [&](int x) { return up[x] == x ? x : up[x] = find(up[x]); };
    for (auto [a, b] : xs) up[find(a)] = find(b);
    std::vector<int> size(m, 0);
    std::vector<char> crossed(m, 0);
    for (auto [a, b] : xs) crossed[a] = crossed[b] = 1;
    int comps = 0;
    for (int e = 0; e < m; ++e)
        if (crossed[e] && size[find(e)]++ == 0) ++comps;
    for (int s : size)
        if (s > 3) return false;
    return comps <= 2;
}

// Calls f on every instance; returns how many there were.
inline long for_each_instance(const std::string& atlas_path, const std::function<void(const satr::ATGraph&)>& f) {
    long count = 0;
    for (auto& g : testutil::load_atlas(atlas_path)) {
        if (g.n > 6 || g.edges.size() > 9) continue;
        const int m = static_cast<int>(g.edges.size());
        std::vector<std::pair<int, int>> pairs;
        for (int e = 0; e < m; ++e)
            for (int h = e + 1; h < m; ++h) {
                auto [a, b] = g.edges[e];
                auto [c, d] = g.edges[h];
                if (a != c && a != d && b != c && b != d) pairs.push_back({e, h});
            }
        std::vector<std::pair<int, int>> chosen;
        // subsets in index order, pruned as soon as the components grow too large
        std::function<void(size_t)> rec = [&](size_t from) {
            f(testutil::make_at(g.n, g.edges, chosen));
            ++count;
            for (size_t i = from; i < pairs.size(); ++i) {
                chosen.push_back(pairs[i]);
                if (small_components(m, chosen)) rec(i + 1);
                chosen.pop_back();
            }
        };
        rec(0);
    }
    return count;
}

}  // namespace suite
