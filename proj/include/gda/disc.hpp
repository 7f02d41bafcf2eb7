#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gda/graph.hpp"

namespace gda {

/// 0-1 indicator of the sampling set; diag(a) is the data-fidelity block of
/// B = diag(a) + mu*L.
struct SamplingVector {
    std::vector<std::uint8_t> bits;

    static SamplingVector zeros(int n) { return {std::vector<std::uint8_t>(n, 0)}; }
    static SamplingVector ones(int n) { return {std::vector<std::uint8_t>(n, 1)}; }
    static SamplingVector from_set(int n, std::span<const int> nodes) {
        SamplingVector a = zeros(n);
        for (int i : nodes) {
            if (i < 0 || i >= n) throw Error("sampling set node out of range: " + std::to_string(i));
            a.bits[i] = 1;
        }
        return a;
    }

    int n() const { return static_cast<int>(bits.size()); }
    int count() const {
        int c = 0;
        for (auto b : bits) c += b;
        return c;
    }
    bool operator[](int i) const { return bits[i] != 0; }
};

namespace detail {

// sum over neighbors of w_ij / s_j
inline double inv_scale_weight_sum(const Graph& g, std::span<const double> s, int i) {
    double acc = 0.0;
    for (const auto& [j, w] : g.neighbors(i)) acc += w / s[j];
    return acc;
}

} // namespace detail

// Row formulas for C = S B S^{-1} with S = diag(s), s > 0, B = diag(a)+mu*L.
// The similarity transform leaves the diagonal (a_i + mu*d_i) in place and
// scales row i's off-diagonals by s_i/s_j, so the disc left-end of row i is
//   l_i = a_i + mu * (d_i - s_i * sum_j w_ij / s_j)
// and the s_i that pins l_i to exactly T is
//   s_i = (a_i + mu*d_i - T) / (mu * sum_j w_ij / s_j).

inline double disc_left_end(const Graph& g, double mu, bool sampled, std::span<const double> s, int i) {
    const double a = sampled ? 1.0 : 0.0;
    return a + mu * (g.degree(i) - s[i] * detail::inv_scale_weight_sum(g, s, i));
}

inline double disc_scale_factor(const Graph& g, double mu, bool sampled, std::span<const double> s,
                                int i, double target) {
    if (g.neighbors(i).empty())
        throw Error("scale factor undefined for isolated node " + std::to_string(i));
    const double a = sampled ? 1.0 : 0.0;
    return (a + mu * g.degree(i) - target) / (mu * detail::inv_scale_weight_sum(g, s, i));
}

/// Per-node scale factors for B = diag(a) + mu*L under the diagonal
/// similarity transform. Centers a_i + mu*d_i are invariant in s.
struct DiscState {
    const Graph* graph = nullptr;
    SamplingVector a;
    std::vector<double> s;
    double mu = 0.0;

    static DiscState unit(const Graph& g, SamplingVector a, double mu) {
        return {&g, std::move(a), std::vector<double>(g.n(), 1.0), mu};
    }

    double center(int i) const { return (a[i] ? 1.0 : 0.0) + mu * graph->degree(i); }
};

inline double left_end(const DiscState& st, int i) {
    return disc_left_end(*st.graph, st.mu, st.a[i], st.s, i);
}

inline double scale_factor(const DiscState& st, int i, double target) {
    return disc_scale_factor(*st.graph, st.mu, st.a[i], st.s, i, target);
}

inline double min_left_end(const Graph& g, const SamplingVector& a, std::span<const double> s, double mu) {
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n(); ++i) lo = std::min(lo, disc_left_end(g, mu, a[i], s, i));
    return lo;
}

inline double max_left_end(const Graph& g, const SamplingVector& a, std::span<const double> s, double mu) {
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n(); ++i) hi = std::max(hi, disc_left_end(g, mu, a[i], s, i));
    return hi;
}

} // namespace gda
