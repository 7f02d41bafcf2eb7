#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gda/disc.hpp"
#include "gda/graph.hpp"
#include "gda/recon.hpp"
#include "gda/rng.hpp"

namespace gda {

inline Eigen::MatrixXd dense_laplacian(const Graph& g) {
    const int n = g.n();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        L(e.u, e.v) -= e.w;
        L(e.v, e.u) -= e.w;
        L(e.u, e.u) += e.w;
        L(e.v, e.v) += e.w;
    }
    return L;
}

/// Dense coefficient matrix diag(a) + mu*L.
inline Eigen::MatrixXd dense_coefficient(const Graph& g, const SamplingVector& a, double mu) {
    Eigen::MatrixXd B = mu * dense_laplacian(g);
    for (int i = 0; i < g.n(); ++i)
        if (a[i]) B(i, i) += 1.0;
    return B;
}

/// Similarity-transformed coefficient matrix S B S^{-1} with S = diag(s).
inline Eigen::MatrixXd dense_scaled_coefficient(const Graph& g, const SamplingVector& a,
                                                std::span<const double> s, double mu) {
    Eigen::MatrixXd B = dense_coefficient(g, a, mu);
    const int n = g.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) *= s[i] / s[j];
    return B;
}

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    Eigen::MatrixXd vectors;          // columns aligned with eigenvalues
};

/// Full eigendecomposition of diag(a) + mu*L; refuses sizes past `cap`
/// because this dense path is for checking, not production scale.
inline Spectrum dense_spectrum(const Graph& g, const SamplingVector& a, double mu, int cap = 500) {
    if (g.n() > cap) throw Error("dense spectrum oracle capped at n <= " + std::to_string(cap));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_coefficient(g, a, mu));
    if (es.info() != Eigen::Success) throw Error("dense eigensolver failed");
    Spectrum out;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + g.n());
    out.vectors = es.eigenvectors();
    return out;
}

/// Graph Fourier basis: eigenvectors of the Laplacian alone, ascending
/// frequency.
inline Spectrum laplacian_spectrum(const Graph& g, int cap = 500) {
    if (g.n() > cap) throw Error("dense spectrum oracle capped at n <= " + std::to_string(cap));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_laplacian(g));
    if (es.info() != Eigen::Success) throw Error("dense eigensolver failed");
    Spectrum out;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + g.n());
    out.vectors = es.eigenvectors();
    return out;
}

inline std::vector<double> gft(const Spectrum& sp, std::span<const double> x) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::VectorXd c = sp.vectors.transpose() * xv;
    return {c.data(), c.data() + c.size()};
}

inline std::vector<double> inverse_gft(const Spectrum& sp, std::span<const double> coeffs) {
    Eigen::Map<const Eigen::VectorXd> cv(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
    Eigen::VectorXd x = sp.vectors * cv;
    return {x.data(), x.data() + x.size()};
}

enum class SignalModel { Bandlimited, Gmrf };

/// Ground-truth test signal plus the metadata needed to reproduce it.
struct SignalInstance {
    std::vector<double> x_true;
    SignalModel model;
    int bandwidth = 0;      // nonzero Fourier coefficients (bandlimited model)
    double delta = 0.0;     // diagonal shift of the precision matrix (GMRF model)
    double noise_std = 0.1;
    std::uint64_t seed = 0;
};

/// Bandlimited test signal: the first floor(n/10) Fourier coefficients are
/// independent Gaussians with variance 10, the rest zero.
inline SignalInstance gen_bandlimited_signal(const Graph& g, const Spectrum& lap_spectrum,
                                             std::uint64_t seed) {
    const int n = g.n();
    const int bandwidth = std::max(1, n / 10);
    Rng rng(derive_seed(seed, 0x651));
    std::vector<double> coeffs(static_cast<std::size_t>(n), 0.0);
    const double std_dev = std::sqrt(10.0);
    for (int k = 0; k < bandwidth; ++k) coeffs[static_cast<std::size_t>(k)] = rng.gaussian(0.0, std_dev);
    SignalInstance out;
    out.x_true = inverse_gft(lap_spectrum, coeffs);
    out.model = SignalModel::Bandlimited;
    out.bandwidth = bandwidth;
    out.seed = seed;
    return out;
}

/// Smooth non-bandlimited test signal: draw x ~ N(0, (L + delta*I)^{-1})
/// via the Cholesky factor, then normalize to zero mean and unit variance.
inline SignalInstance gen_gmrf_signal(const Graph& g, std::uint64_t seed, double delta = 1e-5) {
    const int n = g.n();
    Eigen::MatrixXd P = dense_laplacian(g);
    P.diagonal().array() += delta;
    Eigen::LLT<Eigen::MatrixXd> llt(P);
    if (llt.info() != Eigen::Success) throw Error("covariance factorization failed");
    Rng rng(derive_seed(seed, 0x652));
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z(i) = rng.gaussian();
    // If P = R^T R then x = R^{-1} z has covariance P^{-1}.
    Eigen::VectorXd x = llt.matrixU().solve(z);
    const double mean = x.mean();
    double var = 0.0;
    for (int i = 0; i < n; ++i) var += (x(i) - mean) * (x(i) - mean);
    var /= n;
    const double sd = std::sqrt(var);
    if (!(sd > 0.0)) throw Error("degenerate smooth signal draw");
    SignalInstance out;
    out.x_true.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.x_true[static_cast<std::size_t>(i)] = (x(i) - mean) / sd;
    out.model = SignalModel::Gmrf;
    out.delta = delta;
    out.seed = seed;
    return out;
}

/// Exhaustive minimum set cover for tiny universes; nullopt when no cover
/// within the budget exists. Subsets are given as member lists over
/// {0,...,universe-1}.
inline std::optional<std::vector<int>> brute_force_set_cover(
    int universe, const std::vector<std::vector<int>>& subsets, int budget) {
    if (universe > 12) throw Error("brute-force cover capped at universe <= 12");
    const std::uint32_t full = universe == 0 ? 0 : (1u << universe) - 1;
    const int ns = static_cast<int>(subsets.size());
    std::vector<std::uint32_t> masks(static_cast<std::size_t>(ns), 0);
    for (int i = 0; i < ns; ++i)
        for (int v : subsets[static_cast<std::size_t>(i)]) masks[static_cast<std::size_t>(i)] |= 1u << v;

    for (int size = 0; size <= std::min(budget, ns); ++size) {
        // Lexicographically first combination of `size` subset indices.
        std::vector<int> idx(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::uint32_t covered = 0;
            for (int i : idx) covered |= masks[static_cast<std::size_t>(i)];
            if (covered == full) return idx;
            if (size == 0) break;
            int pos = size - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == ns - size + pos) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < size; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return std::nullopt;
}

struct SandwichReport {
    double min_left_end;
    double lambda_min;
    double max_left_end;
};

/// Checks the disc sandwich min_i l_i <= lambda_min(B) <= max_i l_i for a
/// concrete (a, s) pair, with lambda_min from the dense eigensolver.
inline SandwichReport eig_sandwich_check(const Graph& g, const SamplingVector& a,
                                         std::span<const double> s, double mu, int cap = 500) {
    const auto sp = dense_spectrum(g, a, mu, cap);
    return {min_left_end(g, a, s, mu), sp.eigenvalues.front(), max_left_end(g, a, s, mu)};
}

struct BoundReport {
    double error_norm;   // ||x_hat - x||_2
    double bound;        // mu/lambda_min * ||L(x + noise_up)||_2 + ||noise_up||_2
    double lambda_min;
};

/// Reconstruction error bound from the smallest eigenvalue: for x_hat
/// solving (diag(a) + mu*L) x_hat = up(y) with y = x_S + noise,
///   ||x_hat - x|| <= mu/lambda_min(B) * ||L (x + up(noise))|| + ||up(noise)||.
inline BoundReport mse_bound_check(const Graph& g, std::span<const double> x_true,
                                   const SampleObservation& obs, double mu) {
    const int n = g.n();
    SamplingVector a = SamplingVector::from_set(n, obs.sample_set);
    std::vector<double> noise_up(static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < obs.sample_set.size(); ++k) {
        const int i = obs.sample_set[k];
        noise_up[static_cast<std::size_t>(i)] =
            obs.values[k] - x_true[static_cast<std::size_t>(i)];
    }

    SolverConfig cfg;
    cfg.mu = mu;
    cfg.tol = 1e-12;
    const auto x_hat = glr_reconstruct(g, obs, cfg);

    const auto sp = dense_spectrum(g, a, mu);
    const double lam_min = sp.eigenvalues.front();

    std::vector<double> noisy(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        noisy[static_cast<std::size_t>(i)] = x_true[static_cast<std::size_t>(i)] +
                                             noise_up[static_cast<std::size_t>(i)];
    const auto l_noisy = laplacian_apply(g, noisy);

    double err = 0.0, ln = 0.0, nn = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = x_hat[static_cast<std::size_t>(i)] - x_true[static_cast<std::size_t>(i)];
        err += d * d;
        ln += l_noisy[static_cast<std::size_t>(i)] * l_noisy[static_cast<std::size_t>(i)];
        nn += noise_up[static_cast<std::size_t>(i)] * noise_up[static_cast<std::size_t>(i)];
    }
    BoundReport out;
    out.lambda_min = lam_min;
    out.error_norm = std::sqrt(err);
    out.bound = mu / lam_min * std::sqrt(ln) + std::sqrt(nn);
    return out;
}

} // namespace gda
