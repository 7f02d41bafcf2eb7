#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gda {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Edge {
    int u;        // smaller endpoint
    int v;        // larger endpoint
    double w;     // strictly positive weight
};

/// Immutable sparse symmetric weighted graph.
///
/// Edges are stored once with u < v; per-node adjacency lists hold both
/// directions sorted by neighbor index. Degrees are weighted row sums of the
/// adjacency matrix, so the combinatorial Laplacian L = D - W is available
/// row-wise without materializing any matrix. Connected components are
/// resolved at build time.
class Graph {
public:
    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const std::pair<int, double>> neighbors(int i) const {
        return {adjacency_[i].data(), adjacency_[i].size()};
    }
    double degree(int i) const { return degrees_[i]; }
    const std::vector<double>& degrees() const { return degrees_; }

    int component_of(int i) const { return component_[i]; }
    int num_components() const { return num_components_; }

    friend Graph build_graph(int n, std::vector<Edge> edges);

private:
    Graph() = default;

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::vector<double> degrees_;
    std::vector<int> component_;
    int num_components_ = 0;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[b] = a;
    }

private:
    std::vector<int> parent_;
};

} // namespace detail

/// Validates and assembles a Graph from an undirected weighted edge list.
/// Rejects out-of-range endpoints, self-loops, non-positive weights and
/// duplicate pairs.
inline Graph build_graph(int n, std::vector<Edge> edges) {
    if (n < 1) throw Error("graph must have at least one node");

    for (auto& e : edges) {
        if (e.u == e.v) throw Error("self-loop on node " + std::to_string(e.u));
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
            throw Error("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                        std::to_string(e.v) + ")");
        if (!(e.w > 0.0))
            throw Error("non-positive weight on edge (" + std::to_string(e.u) + "," +
                        std::to_string(e.v) + ")");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::pair{a.u, a.v} < std::pair{b.u, b.v};
    });
    for (std::size_t k = 1; k < edges.size(); ++k) {
        if (edges[k].u == edges[k - 1].u && edges[k].v == edges[k - 1].v)
            throw Error("duplicate edge (" + std::to_string(edges[k].u) + "," +
                        std::to_string(edges[k].v) + ")");
    }

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adjacency_.assign(n, {});
    g.degrees_.assign(n, 0.0);

    detail::UnionFind uf(n);
    for (const auto& e : g.edges_) {
        g.adjacency_[e.u].emplace_back(e.v, e.w);
        g.adjacency_[e.v].emplace_back(e.u, e.w);
        g.degrees_[e.u] += e.w;
        g.degrees_[e.v] += e.w;
        uf.unite(e.u, e.v);
    }
    for (auto& adj : g.adjacency_)
        std::sort(adj.begin(), adj.end());

    g.component_.assign(n, -1);
    int next_id = 0;
    std::vector<int> root_id(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = uf.find(i);
        if (root_id[r] < 0) root_id[r] = next_id++;
        g.component_[i] = root_id[r];
    }
    g.num_components_ = next_id;
    return g;
}

/// Laplacian quadratic form x'Lx = sum over edges of w_ij (x_i - x_j)^2.
inline double laplacian_quadratic(const Graph& g, std::span<const double> x) {
    if (static_cast<int>(x.size()) != g.n())
        throw Error("laplacian_quadratic: vector length " + std::to_string(x.size()) +
                    " does not match node count " + std::to_string(g.n()));
    double acc = 0.0;
    for (const auto& e : g.edges()) {
        const double d = x[e.u] - x[e.v];
        acc += e.w * d * d;
    }
    return acc;
}

/// y = Lx computed row-wise: y_i = d_i x_i - sum_j w_ij x_j.
inline std::vector<double> laplacian_apply(const Graph& g, std::span<const double> x) {
    if (static_cast<int>(x.size()) != g.n())
        throw Error("laplacian_apply: vector length mismatch");
    std::vector<double> y(g.n());
    for (int i = 0; i < g.n(); ++i) {
        double acc = g.degree(i) * x[i];
        for (const auto& [j, w] : g.neighbors(i)) acc -= w * x[j];
        y[i] = acc;
    }
    return y;
}

/// Row-wise view of L = D - W for a fixed Graph: diagonal d_i, off-diagonal -w_ij.
class LaplacianView {
public:
    explicit LaplacianView(const Graph& g) : g_(g) {}

    double diagonal(int i) const { return g_.degree(i); }
    double off_diagonal(int i, int j) const {
        for (const auto& [k, w] : g_.neighbors(i))
            if (k == j) return -w;
        return 0.0;
    }
    // d_i + sum of off-diagonals; zero for every row of a combinatorial Laplacian
    double row_sum(int i) const {
        double acc = g_.degree(i);
        for (const auto& [j, w] : g_.neighbors(i)) acc -= w;
        return acc;
    }

private:
    const Graph& g_;
};

} // namespace gda
