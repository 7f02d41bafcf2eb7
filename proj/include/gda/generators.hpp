#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "gda/graph.hpp"
#include "gda/rng.hpp"

namespace gda {

using Coord = std::array<double, 2>;

struct SensorGraph {
    Graph graph;
    std::vector<Coord> coords;
};

struct CommunityGraph {
    Graph graph;
    std::vector<Coord> coords;
    std::vector<int> labels;   // community id per node, partitioning all nodes
    int num_communities = 0;
};

namespace detail {

inline double sq_dist(const Coord& a, const Coord& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

} // namespace detail

/// k-nearest-neighbor graph on points uniform in the unit square.
///
/// The edge set is the symmetrized union of each node's k_nn nearest
/// neighbors. Weights are the Gaussian kernel exp(-||x_i-x_j||^2 / sigma^2)
/// where sigma^2 is the mean squared distance over the included edges, so
/// weights land well spread in (0,1] at any scale.
inline SensorGraph gen_sensor_graph(int n, int k_nn, std::uint64_t seed) {
    if (k_nn < 1) throw Error("gen_sensor_graph: k_nn must be >= 1");
    if (n <= k_nn) throw Error("gen_sensor_graph: need n > k_nn");

    Rng rng(derive_seed(seed, 0x5e5));
    std::vector<Coord> coords(n);
    for (auto& c : coords) {
        c[0] = rng.uniform01();
        c[1] = rng.uniform01();
    }

    std::set<std::pair<int, int>> pairs;
    std::vector<std::pair<double, int>> dist(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dist[j] = {detail::sq_dist(coords[i], coords[j]), j};
        dist[i].first = std::numeric_limits<double>::infinity();
        std::partial_sort(dist.begin(), dist.begin() + k_nn, dist.end());
        for (int k = 0; k < k_nn; ++k) {
            const int j = dist[k].second;
            pairs.insert({std::min(i, j), std::max(i, j)});
        }
    }

    double mean_sq = 0.0;
    for (const auto& [u, v] : pairs) mean_sq += detail::sq_dist(coords[u], coords[v]);
    mean_sq /= static_cast<double>(pairs.size());

    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs)
        edges.push_back({u, v, std::exp(-detail::sq_dist(coords[u], coords[v]) / mean_sq)});

    return {build_graph(n, std::move(edges)), std::move(coords)};
}

/// Community graph with floor(sqrt(n)/2) communities.
///
/// Community centers sit equally spaced on a circle of radius 1; nodes are
/// scattered around their center with isotropic Gaussian offsets (std 0.15).
/// All intra-community pairs closer than 0.3 are connected, plus
/// ceil(0.02*n) random inter-community edges. Weights use the Gaussian
/// kernel with sigma = 1.
inline CommunityGraph gen_community_graph(int n, std::uint64_t seed) {
    if (n < 4) throw Error("gen_community_graph: need n >= 4");

    const int c = static_cast<int>(std::sqrt(static_cast<double>(n)) / 2.0);
    Rng rng(derive_seed(seed, 0xc0));

    std::vector<int> labels(n);
    std::vector<Coord> coords(n);
    constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        const int k = static_cast<int>(static_cast<long long>(i) * c / n);
        labels[i] = k;
        const double angle = kTwoPi * k / c;
        coords[i][0] = std::cos(angle) + 0.15 * rng.gaussian();
        coords[i][1] = std::sin(angle) + 0.15 * rng.gaussian();
    }

    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n && labels[j] == labels[i]; ++j)
            if (detail::sq_dist(coords[i], coords[j]) < 0.3 * 0.3) pairs.insert({i, j});

    const int extra = static_cast<int>((n + 49) / 50);   // ceil(0.02 n)
    int added = 0;
    int guard = 0;
    while (added < extra && guard < 1000 * extra) {
        ++guard;
        const int i = static_cast<int>(rng.uniform_int(n));
        const int j = static_cast<int>(rng.uniform_int(n));
        if (labels[i] == labels[j]) continue;
        const auto key = std::pair{std::min(i, j), std::max(i, j)};
        if (pairs.contains(key)) continue;
        pairs.insert(key);
        ++added;
    }

    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs)
        edges.push_back({u, v, std::exp(-detail::sq_dist(coords[u], coords[v]))});

    return {build_graph(n, std::move(edges)), std::move(coords), std::move(labels), c};
}

/// Barabasi-Albert preferential-attachment tree (m = 1).
///
/// Starts from a single edge between nodes 0 and 1; each new node attaches
/// to one existing node with probability proportional to its current edge
/// count. Edge weights are i.i.d. uniform on the open interval (0,1).
inline Graph gen_ba_graph(int n, std::uint64_t seed) {
    if (n < 2) throw Error("gen_ba_graph: need n >= 2");

    Rng rng(derive_seed(seed, 0xba));
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    // one entry per edge endpoint; uniform picks here realize degree-proportional attachment
    std::vector<int> endpoints;
    endpoints.reserve(2 * (n - 1));

    edges.push_back({0, 1, rng.uniform_open01()});
    endpoints.push_back(0);
    endpoints.push_back(1);

    for (int t = 2; t < n; ++t) {
        const int target = endpoints[rng.uniform_int(endpoints.size())];
        edges.push_back({std::min(target, t), std::max(target, t), rng.uniform_open01()});
        endpoints.push_back(target);
        endpoints.push_back(t);
    }
    return build_graph(n, std::move(edges));
}

} // namespace gda
