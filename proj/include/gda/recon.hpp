#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gda/disc.hpp"
#include "gda/graph.hpp"
#include "gda/rng.hpp"

namespace gda {

/// Observed samples: which nodes were read and the value read at each, in
/// the same order as `sample_set`.
struct SampleObservation {
    std::vector<int> sample_set;
    std::vector<double> values;
};

struct SolverConfig {
    double mu = 0.01;
    double tol = 1e-8;   // relative residual target
    int max_iters = 0;   // 0 means 10 * n
};

/// Restriction of a full signal to the sampled nodes.
inline SampleObservation apply_sampling(std::span<const double> x, std::span<const int> sample_set,
                                        int n) {
    if (static_cast<int>(x.size()) != n) throw Error("signal length does not match graph size");
    SampleObservation obs;
    obs.sample_set.assign(sample_set.begin(), sample_set.end());
    obs.values.reserve(sample_set.size());
    for (int i : sample_set) {
        if (i < 0 || i >= n) throw Error("sample index out of range");
        obs.values.push_back(x[static_cast<std::size_t>(i)]);
    }
    return obs;
}

/// Samples plus i.i.d. Gaussian read noise.
inline SampleObservation make_observation(std::span<const double> x, std::span<const int> sample_set,
                                          int n, double noise_std, std::uint64_t seed) {
    auto obs = apply_sampling(x, sample_set, n);
    Rng rng(derive_seed(seed, 0x0b5));
    for (auto& v : obs.values) v += rng.gaussian(0.0, noise_std);
    return obs;
}

namespace detail {

// y = (diag(a) + mu*L) x, computed edge-wise without forming the matrix.
inline void coefficient_apply(const Graph& g, const SamplingVector& a, double mu,
                              std::span<const double> x, std::span<double> y) {
    const int n = g.n();
    for (int i = 0; i < n; ++i)
        y[i] = (a[i] ? x[i] : 0.0) + mu * g.degree(i) * x[i];
    for (const auto& e : g.edges()) {
        y[e.u] -= mu * e.w * x[e.v];
        y[e.v] -= mu * e.w * x[e.u];
    }
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

} // namespace detail

/// Smoothness-regularized reconstruction from partial samples: solves
///   (diag(a) + mu*L) x = up(y)
/// where a is the sampling indicator and up(y) zero-fills the unsampled
/// entries. The system matrix is positive definite whenever every connected
/// component holds at least one sample; that precondition is checked up
/// front and reported per component. Conjugate gradients, matrix-free; the
/// returned solution has been re-verified against a freshly computed
/// residual, not just the recursively updated one.
inline std::vector<double> glr_reconstruct(const Graph& g, const SampleObservation& obs,
                                           const SolverConfig& cfg = {}) {
    const int n = g.n();
    if (obs.sample_set.empty()) throw Error("reconstruction requires a non-empty sampling set");
    if (obs.sample_set.size() != obs.values.size())
        throw Error("observation values do not align with its sampling set");
    if (!(cfg.mu > 0.0)) throw Error("mu must be > 0");

    std::vector<double> b(n, 0.0);
    SamplingVector a = SamplingVector::zeros(n);
    for (std::size_t k = 0; k < obs.sample_set.size(); ++k) {
        const int i = obs.sample_set[k];
        if (i < 0 || i >= n) throw Error("sample index out of range");
        if (a[i]) throw Error("duplicate sample index " + std::to_string(i));
        a.bits[i] = 1;
        b[i] = obs.values[k];
    }

    std::vector<std::uint8_t> component_sampled(g.num_components(), 0);
    for (int i : obs.sample_set) component_sampled[g.component_of(i)] = 1;
    for (int i = 0; i < n; ++i)
        if (!component_sampled[g.component_of(i)])
            throw Error("connected component " + std::to_string(g.component_of(i)) +
                        " has no samples; reconstruction is underdetermined");

    const double b_norm = detail::norm2(b);
    std::vector<double> x(n, 0.0);
    if (b_norm == 0.0) return x;  // all-zero reads, zero is exact

    const int max_iters = cfg.max_iters > 0 ? cfg.max_iters : 10 * n;
    std::vector<double> r = b;  // r = b - A*0
    std::vector<double> p = r;
    std::vector<double> ap(n);

    double rr = detail::dot(r, r);
    for (int it = 0; it < max_iters; ++it) {
        if (std::sqrt(rr) <= cfg.tol * b_norm) break;
        detail::coefficient_apply(g, a, cfg.mu, p, ap);
        const double alpha = rr / detail::dot(p, ap);
        for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (int i = 0; i < n; ++i) r[i] -= alpha * ap[i];
        const double rr_next = detail::dot(r, r);
        const double beta = rr_next / rr;
        rr = rr_next;
        for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }

    // Trust only a recomputed residual.
    detail::coefficient_apply(g, a, cfg.mu, x, ap);
    for (int i = 0; i < n; ++i) ap[i] -= b[i];
    const double true_rel = detail::norm2(ap) / b_norm;
    if (!(true_rel <= cfg.tol * 16))
        throw Error("conjugate gradients failed to converge: relative residual " +
                    std::to_string(true_rel));
    return x;
}

inline double mse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw Error("mse requires equal non-empty vectors");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

} // namespace gda
