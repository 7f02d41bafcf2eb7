#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "gda/disc.hpp"
#include "gda/graph.hpp"
#include "gda/rng.hpp"

namespace gda {

/// Fixed-width bit array over the node set; backs the uncovered-node
/// bookkeeping of the greedy cover.
class Bitset {
public:
    explicit Bitset(int nbits, bool value = false)
        : nbits_(nbits), words_((nbits + 63) / 64, value ? ~0ULL : 0ULL) {
        if (value && nbits_ % 64 != 0) words_.back() &= (1ULL << (nbits_ % 64)) - 1;
    }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
    void set(int i) { words_[i >> 6] |= 1ULL << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    int size() const { return nbits_; }

private:
    int nbits_;
    std::vector<std::uint64_t> words_;
};

/// Result of growing the aligned region around one candidate sample: the
/// nodes whose disc left-ends reach the target T when only `root` is
/// sampled, with the scale factors fixed along the way.
struct CoverageSubset {
    int root = -1;
    double target = 0.0;
    int hop_limit = 0;
    std::vector<int> members;    // ascending
    std::vector<double> scales;  // aligned with members, each >= 1

    bool contains(int node) const {
        return std::binary_search(members.begin(), members.end(), node);
    }
    double scale_of(int node) const {
        auto it = std::lower_bound(members.begin(), members.end(), node);
        return scales[static_cast<std::size_t>(it - members.begin())];
    }
    int size() const { return static_cast<int>(members.size()); }
};

namespace detail {

// Scratch buffers for repeated coverage estimation. Epoch stamping avoids
// O(n) clears between roots.
struct CoverageScratch {
    std::vector<double> s;
    std::vector<int> hop;
    std::vector<std::uint32_t> seen_epoch;    // node has been enqueued
    std::vector<std::uint32_t> scaled_epoch;  // node's s entry is current
    std::vector<int> queue;
    std::uint32_t epoch = 0;

    void ensure(int n) {
        if (static_cast<int>(s.size()) < n) {
            s.resize(n);
            hop.resize(n);
            seen_epoch.assign(n, 0);
            scaled_epoch.assign(n, 0);
        }
    }
};

inline CoverageSubset estimate_coverage_impl(const Graph& g, double target, int root, int hop_limit,
                                             double mu, CoverageScratch& scratch) {
    scratch.ensure(g.n());
    ++scratch.epoch;
    const auto epoch = scratch.epoch;

    CoverageSubset out;
    out.root = root;
    out.target = target;
    out.hop_limit = hop_limit;

    auto scale_at = [&](int j) {
        return scratch.scaled_epoch[j] == epoch ? scratch.s[j] : 1.0;
    };

    scratch.queue.clear();
    std::size_t head = 0;
    scratch.queue.push_back(root);
    scratch.seen_epoch[root] = epoch;
    scratch.hop[root] = 0;

    std::vector<std::pair<int, double>> found;  // (node, scale) in BFS order

    while (head < scratch.queue.size()) {
        const int k = scratch.queue[head++];
        const bool is_root = (k == root);

        double s_k;
        if (g.neighbors(k).empty()) {
            // Degenerate isolated root: sampling alone puts its left-end at
            // 1 >= T, no scaling exists or is needed.
            s_k = 1.0;
        } else {
            double inv_sum = 0.0;
            for (const auto& [j, w] : g.neighbors(k)) inv_sum += w / scale_at(j);
            const double a_k = is_root ? 1.0 : 0.0;
            s_k = (a_k + mu * g.degree(k) - target) / (mu * inv_sum);
        }

        // s_k >= 1 here is equivalent to the unscaled left-end of k already
        // sitting at or beyond T given the neighbors' current scales; only
        // then is the expansion admissible.
        if (s_k >= 1.0 && scratch.hop[k] <= hop_limit) {
            scratch.s[k] = s_k;
            scratch.scaled_epoch[k] = epoch;
            found.emplace_back(k, s_k);
            for (const auto& [t, w] : g.neighbors(k)) {
                (void)w;
                if (scratch.seen_epoch[t] != epoch) {
                    scratch.seen_epoch[t] = epoch;
                    scratch.hop[t] = scratch.hop[k] + 1;
                    scratch.queue.push_back(t);
                }
            }
        }
        // Rejected candidates keep scale 1: no disc is scaled unless its
        // left-end lands at T, which also keeps every stored s positive.
    }

    std::sort(found.begin(), found.end());
    out.members.reserve(found.size());
    out.scales.reserve(found.size());
    for (const auto& [node, s] : found) {
        out.members.push_back(node);
        out.scales.push_back(s);
    }
    return out;
}

} // namespace detail

/// Grows the coverage subset of `root` at target T by hop-limited BFS:
/// each dequeued node is aligned to T via the closed-form scale factor and
/// admitted iff that factor is an expansion (s >= 1) within the hop budget.
/// Neighbor order (and hence BFS order) is ascending node index.
inline CoverageSubset estimate_coverage(const Graph& g, double target, int root, int hop_limit,
                                        double mu) {
    if (!(target > 0.0 && target < 1.0)) throw Error("coverage target must lie in (0,1)");
    if (hop_limit < 0) throw Error("hop limit must be >= 0");
    if (!(mu > 0.0)) throw Error("mu must be > 0");
    if (root < 0 || root >= g.n()) throw Error("coverage root out of range");
    detail::CoverageScratch scratch;
    return detail::estimate_coverage_impl(g, target, root, hop_limit, mu, scratch);
}

/// All n coverage subsets at one target, indexed by root. With threads > 1
/// roots are partitioned into contiguous chunks; results land in a
/// root-indexed vector, so the output is independent of the worker count.
inline std::vector<CoverageSubset> estimate_all_coverages(const Graph& g, double target,
                                                          int hop_limit, double mu,
                                                          int threads = 1) {
    const int n = g.n();
    std::vector<CoverageSubset> subsets(n);
    const int workers = std::max(1, std::min(threads, n));
    if (workers == 1) {
        detail::CoverageScratch scratch;
        for (int i = 0; i < n; ++i)
            subsets[i] = detail::estimate_coverage_impl(g, target, i, hop_limit, mu, scratch);
        return subsets;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        const int lo = static_cast<int>(static_cast<long long>(n) * t / workers);
        const int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / workers);
        pool.emplace_back([&, lo, hi] {
            detail::CoverageScratch scratch;
            for (int i = lo; i < hi; ++i)
                subsets[i] = detail::estimate_coverage_impl(g, target, i, hop_limit, mu, scratch);
        });
    }
    for (auto& th : pool) th.join();
    return subsets;
}

struct GreedyCoverResult {
    bool valid = false;
    std::vector<int> sample_set;            // selection order
    std::vector<CoverageSubset> selected;   // subsets of the selected roots, same order
};

namespace detail {

inline int coverage_gain(const CoverageSubset& sub, const Bitset& uncovered) {
    int gain = 0;
    for (int m : sub.members) gain += uncovered.test(m);
    return gain;
}

// Greedy max-coverage selection loop over precomputed subsets. Uses lazy
// re-evaluation: gains only shrink as the uncovered set shrinks, so a
// popped entry whose gain is re-checked against the current uncovered set
// and still tops the heap is exactly the argmax a full rescan would pick,
// including the lowest-index tie rule (the heap orders equal gains by
// ascending root).
inline GreedyCoverResult greedy_select(const std::vector<CoverageSubset>& subsets, int n, int budget) {
    GreedyCoverResult out;
    Bitset uncovered(n, true);

    struct Entry {
        int gain;
        int root;
        bool operator<(const Entry& other) const {
            if (gain != other.gain) return gain < other.gain;
            return root > other.root;
        }
    };
    std::priority_queue<Entry> heap;
    std::vector<std::uint8_t> stale(n, 0);
    for (int i = 0; i < n; ++i) heap.push({subsets[i].size(), i});

    int uncovered_count = n;
    while (uncovered_count > 0 && static_cast<int>(out.sample_set.size()) < budget && !heap.empty()) {
        Entry top = heap.top();
        heap.pop();
        if (stale[top.root]) {
            const int gain = coverage_gain(subsets[top.root], uncovered);
            if (!heap.empty() && Entry{gain, top.root} < heap.top()) {
                stale[top.root] = 0;
                heap.push({gain, top.root});
                continue;
            }
            top.gain = gain;
        }
        if (top.gain == 0) break;  // uncovered nodes unreachable by any subset

        out.sample_set.push_back(top.root);
        out.selected.push_back(subsets[top.root]);
        for (int m : subsets[top.root].members) {
            if (uncovered.test(m)) {
                uncovered.reset(m);
                --uncovered_count;
            }
        }
        for (int i = 0; i < n; ++i) stale[i] = 1;
    }

    out.valid = (uncovered_count == 0);
    return out;
}

// Literal every-round rescan of all subsets; reference used to pin down the
// lazy variant in tests.
inline GreedyCoverResult greedy_select_rescan(const std::vector<CoverageSubset>& subsets, int n,
                                              int budget) {
    GreedyCoverResult out;
    Bitset uncovered(n, true);
    std::vector<std::uint8_t> selected(n, 0);
    int uncovered_count = n;

    while (uncovered_count > 0 && static_cast<int>(out.sample_set.size()) < budget) {
        int best = -1;
        int best_gain = 0;
        for (int i = 0; i < n; ++i) {
            if (selected[i]) continue;
            const int gain = coverage_gain(subsets[i], uncovered);
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        if (best < 0) break;
        selected[best] = 1;
        out.sample_set.push_back(best);
        out.selected.push_back(subsets[best]);
        for (int m : subsets[best].members) {
            if (uncovered.test(m)) {
                uncovered.reset(m);
                --uncovered_count;
            }
        }
    }
    out.valid = (uncovered_count == 0);
    return out;
}

} // namespace detail

/// Greedy set cover over the coverage subsets at target T: repeatedly pick
/// the root covering the most still-uncovered nodes (ties to the lowest
/// index) until everything is covered or the budget runs out. Valid iff the
/// whole node set got covered, in which case the cover size is within a
/// factor H(max_i |Omega_i|) of the optimum.
inline GreedyCoverResult greedy_cover(const Graph& g, double target, int budget, int hop_limit,
                                      double mu, int threads = 1) {
    if (budget < 1) throw Error("sampling budget must be >= 1");
    const auto subsets = estimate_all_coverages(g, target, hop_limit, mu, threads);
    return detail::greedy_select(subsets, g.n(), budget);
}

/// Merges the selected subsets' scale factors into one vector: node j takes
/// its scale from the first subset (in selection order) containing it;
/// uncovered nodes stay at 1.
inline std::vector<double> assemble_scaling(int n, std::span<const CoverageSubset> selected) {
    std::vector<double> s(n, 1.0);
    std::vector<std::uint8_t> assigned(n, 0);
    for (const auto& sub : selected) {
        for (std::size_t k = 0; k < sub.members.size(); ++k) {
            const int j = sub.members[k];
            if (!assigned[j]) {
                assigned[j] = 1;
                s[j] = sub.scales[k];
            }
        }
    }
    return s;
}

struct SamplingOutcome {
    std::vector<int> sample_set;            // selection order
    bool valid = false;
    double achieved_target = 0.0;           // largest probed T that was coverable
    std::vector<double> assembled_scales;   // per node, 1 where no subset applied
    double certified_lower_bound = 0.0;     // min disc left-end under assembled_scales
    std::vector<std::pair<double, bool>> probe_trace;  // (T, valid) per binary-search probe
};

/// Binary search for the largest alignment target reachable with at most
/// `budget` samples. Probes the midpoint with the greedy cover, keeping the
/// last valid sampling set; the certified bound is the smallest disc
/// left-end under the assembled scales, a true lower bound on
/// lambda_min(diag(a) + mu*L) for any positive scaling.
inline SamplingOutcome bs_gda(const Graph& g, int budget, double eps, int hop_limit, double mu,
                              int threads = 1) {
    if (budget < 1) throw Error("sampling budget must be >= 1");
    if (!(eps > 0.0)) throw Error("binary-search precision must be > 0");
    if (!(mu > 0.0)) throw Error("mu must be > 0");

    SamplingOutcome out;
    double left = 0.0;
    double right = 1.0;
    GreedyCoverResult best;

    while (right - left > eps) {
        const double target = (left + right) / 2.0;
        auto probe = greedy_cover(g, target, budget, hop_limit, mu, threads);
        out.probe_trace.emplace_back(target, probe.valid);
        if (probe.valid) {
            left = target;
            best = std::move(probe);
        } else {
            right = target;
        }
    }

    out.valid = best.valid;
    out.achieved_target = left;
    out.sample_set = best.sample_set;
    out.assembled_scales = assemble_scaling(g.n(), best.selected);
    const auto a = SamplingVector::from_set(g.n(), out.sample_set);
    out.certified_lower_bound = min_left_end(g, a, out.assembled_scales, mu);
    return out;
}

struct AlignmentViolation {
    int node;
    double left_end;
};

/// Audits a scaled sampling configuration against a target: lists the nodes
/// whose disc left-ends fall short of T by more than tol. An empty report
/// certifies the assembled (a, s) pair is feasible for the alignment dual
/// at T.
inline std::vector<AlignmentViolation> verify_alignment(const Graph& g, const SamplingVector& a,
                                                        std::span<const double> s, double mu,
                                                        double target, double tol = 1e-9) {
    std::vector<AlignmentViolation> report;
    for (int i = 0; i < g.n(); ++i) {
        const double le = disc_left_end(g, mu, a[i], s, i);
        if (le < target - tol) report.push_back({i, le});
    }
    return report;
}

/// K distinct nodes uniform without replacement; the baseline sampler.
inline std::vector<int> random_sampler(const Graph& g, int budget, std::uint64_t seed) {
    if (budget < 1 || budget > g.n())
        throw Error("random sampler budget must lie in [1, n]");
    Rng rng(derive_seed(seed, 0x5e7));
    std::vector<int> pool(g.n());
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 0; k < budget; ++k) {
        const int j = k + static_cast<int>(rng.uniform_int(pool.size() - k));
        std::swap(pool[k], pool[j]);
    }
    pool.resize(budget);
    return pool;
}

} // namespace gda
