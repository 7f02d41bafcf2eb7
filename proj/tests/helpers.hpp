#pragma once

#include <set>
#include <utility>
#include <vector>

#include "gda/gda.hpp"

namespace testutil {

// Connected random graph: random spanning tree plus `extra` distinct random
// edges, weights uniform in [0.2, 2).
inline gda::Graph random_connected_graph(int n, int extra, gda::Rng& rng) {
    std::vector<gda::Edge> edges;
    std::set<std::pair<int, int>> used;
    for (int v = 1; v < n; ++v) {
        const int u = static_cast<int>(rng.uniform_int(v));
        edges.push_back({u, v, rng.uniform(0.2, 2.0)});
        used.insert({u, v});
    }
    int attempts = 0;
    while (extra > 0 && attempts < 50 * extra + 100) {
        ++attempts;
        int u = static_cast<int>(rng.uniform_int(n));
        int v = static_cast<int>(rng.uniform_int(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        if (used.count({u, v})) continue;
        used.insert({u, v});
        edges.push_back({u, v, rng.uniform(0.2, 2.0)});
        --extra;
    }
    return gda::build_graph(n, std::move(edges));
}

// Erdos-Renyi-style graph, possibly disconnected, possibly with isolated nodes.
inline gda::Graph random_graph(int n, double edge_prob, gda::Rng& rng) {
    std::vector<gda::Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform01() < edge_prob) edges.push_back({u, v, rng.uniform(0.2, 2.0)});
    return gda::build_graph(n, std::move(edges));
}

inline gda::Graph path_graph(int n, double w = 1.0) {
    std::vector<gda::Edge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({v - 1, v, w});
    return gda::build_graph(n, std::move(edges));
}

inline gda::SamplingVector random_sampling(int n, gda::Rng& rng) {
    auto a = gda::SamplingVector::zeros(n);
    for (int i = 0; i < n; ++i) a.bits[i] = rng.uniform01() < 0.5 ? 1 : 0;
    return a;
}

inline std::vector<double> random_scales(int n, gda::Rng& rng) {
    std::vector<double> s(n);
    for (auto& v : s) v = rng.uniform(0.2, 5.0);
    return s;
}

inline std::vector<double> random_vector(int n, gda::Rng& rng, double lo = -1.0, double hi = 1.0) {
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(lo, hi);
    return x;
}

} // namespace testutil
