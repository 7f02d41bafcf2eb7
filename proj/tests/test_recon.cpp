#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gda/oracle.hpp"
#include "gda/recon.hpp"
#include "helpers.hpp"

TEST(ApplySampling, SelectsValuesInOrder) {
    const std::vector<double> x{5, 6, 7};
    const auto obs = gda::apply_sampling(x, std::vector<int>{2}, 3);
    EXPECT_EQ(obs.values, std::vector<double>{7});

    const auto all = gda::apply_sampling(x, std::vector<int>{0, 1, 2}, 3);
    EXPECT_EQ(all.values, x);

    const auto rev = gda::apply_sampling(x, std::vector<int>{2, 0}, 3);
    EXPECT_EQ(rev.values, (std::vector<double>{7, 5}));
}

TEST(ApplySampling, RejectsBadIndices) {
    const std::vector<double> x{1, 2, 3};
    EXPECT_THROW(gda::apply_sampling(x, std::vector<int>{3}, 3), gda::Error);
    EXPECT_THROW(gda::apply_sampling(x, std::vector<int>{-1}, 3), gda::Error);
    EXPECT_THROW(gda::apply_sampling(x, std::vector<int>{0}, 4), gda::Error);
}

TEST(GlrReconstruct, ConstantSignalRecoveredExactly) {
    gda::Rng rng(149);
    const auto g = testutil::random_connected_graph(30, 20, rng);
    const std::vector<double> x(g.n(), 2.5);
    const auto obs = gda::apply_sampling(x, std::vector<int>{4, 17}, g.n());
    gda::SolverConfig cfg;
    cfg.tol = 1e-12;
    const auto xhat = gda::glr_reconstruct(g, obs, cfg);
    for (int i = 0; i < g.n(); ++i) EXPECT_NEAR(xhat[i], 2.5, 1e-8);
}

TEST(GlrReconstruct, MatchesDenseDirectSolve) {
    gda::Rng rng(151);
    for (int rep = 0; rep < 15; ++rep) {
        const int n = 20 + static_cast<int>(rng.uniform_int(180));
        const auto g = testutil::random_connected_graph(n, n, rng);
        const int K = 2 + static_cast<int>(rng.uniform_int(n / 2));
        const auto set = gda::random_sampler(g, K, rng.next());
        const auto x = testutil::random_vector(n, rng, -2.0, 2.0);
        const auto obs = gda::apply_sampling(x, set, n);

        gda::SolverConfig cfg;
        cfg.mu = 0.01;
        cfg.tol = 1e-10;
        const auto xhat = gda::glr_reconstruct(g, obs, cfg);

        const auto a = gda::SamplingVector::from_set(n, set);
        const auto B = gda::dense_coefficient(g, a, cfg.mu);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        for (std::size_t k = 0; k < set.size(); ++k) b(set[k]) = obs.values[k];
        const Eigen::VectorXd direct = B.ldlt().solve(b);

        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += (xhat[i] - direct(i)) * (xhat[i] - direct(i));
            den += direct(i) * direct(i);
        }
        EXPECT_LE(std::sqrt(num), 1e-6 * std::sqrt(den)) << "n=" << n << " K=" << K;
    }
}

TEST(GlrReconstruct, ResidualContract) {
    gda::Rng rng(157);
    const auto g = testutil::random_connected_graph(80, 60, rng);
    const auto set = gda::random_sampler(g, 10, 3);
    const auto x = testutil::random_vector(g.n(), rng);
    const auto obs = gda::apply_sampling(x, set, g.n());
    gda::SolverConfig cfg;
    const auto xhat = gda::glr_reconstruct(g, obs, cfg);

    const auto a = gda::SamplingVector::from_set(g.n(), set);
    const auto B = gda::dense_coefficient(g, a, cfg.mu);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(g.n());
    for (std::size_t k = 0; k < set.size(); ++k) b(set[k]) = obs.values[k];
    Eigen::Map<const Eigen::VectorXd> xv(xhat.data(), g.n());
    EXPECT_LE((B * xv - b).norm(), 16 * cfg.tol * b.norm());
}

TEST(GlrReconstruct, EmptySetRejected) {
    const auto g = testutil::path_graph(4);
    gda::SampleObservation obs;
    EXPECT_THROW(gda::glr_reconstruct(g, obs), gda::Error);
}

TEST(GlrReconstruct, DuplicateSampleRejected) {
    const auto g = testutil::path_graph(4);
    gda::SampleObservation obs{{1, 1}, {0.5, 0.5}};
    EXPECT_THROW(gda::glr_reconstruct(g, obs), gda::Error);
}

TEST(GlrReconstruct, UnsampledComponentNamed) {
    const auto g = gda::build_graph(5, {{0, 1, 1.0}, {2, 3, 1.0}});
    gda::SampleObservation obs{{0}, {1.0}};
    try {
        gda::glr_reconstruct(g, obs);
        FAIL() << "expected singularity error";
    } catch (const gda::Error& e) {
        EXPECT_NE(std::string(e.what()).find("component"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("no samples"), std::string::npos);
    }
}

TEST(GlrReconstruct, AllComponentsSampledWorks) {
    const auto g = gda::build_graph(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    gda::SampleObservation obs{{0, 3}, {1.0, -1.0}};
    const auto xhat = gda::glr_reconstruct(g, obs);
    EXPECT_EQ(static_cast<int>(xhat.size()), 4);
}

TEST(GlrReconstruct, ZeroObservationsGiveZeroSignal) {
    const auto g = testutil::path_graph(6);
    gda::SampleObservation obs{{2, 4}, {0.0, 0.0}};
    const auto xhat = gda::glr_reconstruct(g, obs);
    for (double v : xhat) EXPECT_EQ(v, 0.0);
}

TEST(GlrReconstruct, IterationCapSurfacesResidual) {
    gda::Rng rng(163);
    const auto g = testutil::random_connected_graph(60, 40, rng);
    const auto x = testutil::random_vector(g.n(), rng);
    const auto obs = gda::apply_sampling(x, std::vector<int>{0}, g.n());
    gda::SolverConfig cfg;
    cfg.mu = 0.01;
    cfg.max_iters = 1;
    cfg.tol = 1e-12;
    try {
        gda::glr_reconstruct(g, obs, cfg);
        FAIL() << "expected convergence failure";
    } catch (const gda::Error& e) {
        EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos) << e.what();
    }
}

TEST(Mse, Examples) {
    const std::vector<double> x{1, 2, 3};
    EXPECT_DOUBLE_EQ(gda::mse(x, x), 0.0);
    const std::vector<double> y{2, 3, 4};
    EXPECT_DOUBLE_EQ(gda::mse(y, x), 1.0);
    EXPECT_THROW(gda::mse(x, std::vector<double>{1, 2}), gda::Error);
}

TEST(Mse, MatchesNaiveTwoPass) {
    gda::Rng rng(167);
    const auto a = testutil::random_vector(500, rng, -3.0, 3.0);
    const auto b = testutil::random_vector(500, rng, -3.0, 3.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    EXPECT_NEAR(gda::mse(a, b), acc / a.size(), 1e-12);
}

TEST(MakeObservation, AddsDeterministicNoise) {
    const std::vector<double> x{1, 2, 3, 4};
    const auto a = gda::make_observation(x, std::vector<int>{1, 3}, 4, 0.1, 42);
    const auto b = gda::make_observation(x, std::vector<int>{1, 3}, 4, 0.1, 42);
    EXPECT_EQ(a.values, b.values);
    EXPECT_NE(a.values[0], 2.0);
    EXPECT_NEAR(a.values[0], 2.0, 1.0);
    const auto clean = gda::make_observation(x, std::vector<int>{1, 3}, 4, 0.0, 42);
    EXPECT_EQ(clean.values, (std::vector<double>{2, 4}));
}

TEST(MseBound, HoldsForDcSignal) {
    const auto g = testutil::path_graph(10);
    const std::vector<double> x(10, 1.0);
    const auto obs = gda::apply_sampling(x, std::vector<int>{0, 5}, 10);
    const auto r = gda::mse_bound_check(g, x, obs, 0.01);
    EXPECT_NEAR(r.error_norm, 0.0, 1e-8);
    EXPECT_GE(r.bound, r.error_norm - 1e-9);
}

TEST(MseBound, HoldsOnNoisyInstances) {
    gda::Rng rng(173);
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 10 + static_cast<int>(rng.uniform_int(90));
        const auto g = testutil::random_connected_graph(n, n / 2, rng);
        const int K = 1 + static_cast<int>(rng.uniform_int(n / 2 + 1));
        const auto set = gda::random_sampler(g, K, rng.next());
        const auto x = testutil::random_vector(n, rng, -2.0, 2.0);
        const auto obs = gda::make_observation(x, set, n, 0.1, rng.next());
        const auto r = gda::mse_bound_check(g, x, obs, 0.01);
        EXPECT_LE(r.error_norm, r.bound + 1e-9) << "n=" << n << " K=" << K;
        EXPECT_GT(r.lambda_min, 0.0);
    }
}
