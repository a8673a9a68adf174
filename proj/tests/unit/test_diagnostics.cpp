#include "conicflow/diagnostics.hpp"
#include "profiles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace conicflow;
using namespace testing_support;

namespace {

FlowConfig sphere_config(int N, double t_end) {
    FlowConfig c;
    c.profile = ProfileKind::shrinking_sphere;
    c.boundary = BoundaryMode::homothetic;
    c.x_min = 0.05;
    c.x_max = 3.14159265358979 - 0.05;
    c.N = N;
    c.t_end = t_end;
    c.store_every = 1;
    return c;
}

/// Max frame-norm residual over stored levels at nodes with lo <= x <= hi.
double band_max(const ResidualSeries& r, double lo, double hi) {
    double m = 0.0;
    for (std::size_t k = 0; k < r.rr.size(); ++k)
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            if (r.x[i] < lo || r.x[i] > hi) continue;
            const double s = r.sph.empty() ? 0.0 : r.sph[k][i];
            m = std::max(m, std::sqrt(r.rr[k][i] * r.rr[k][i] + r.n * s * s));
        }
    return m;
}

}  // namespace

TEST(WeightedSup, Examples) {
    const auto grid = make_grid(0.01, 1.0, 100, 2.0);
    const double w = 0.7;
    EXPECT_NEAR(weighted_sup(sample(grid, [w](double x) { return std::pow(x, w); }), w, grid), 1.0, 1e-14);
    EXPECT_EQ(weighted_sup(std::vector<double>(grid.size(), 0.0), w, grid), 0.0);
    // The outer node is excluded, so the sup sits one node inside x = 1.
    const double inner = grid.x[grid.size() - 2];
    EXPECT_NEAR(weighted_sup(sample(grid, [w](double x) { return std::pow(x, w + 0.5); }), w, grid), std::sqrt(inner), 1e-14);
    const auto r = inner_range(grid);
    EXPECT_EQ(r.first, 1u);
    EXPECT_EQ(r.second, grid.size() - 1);
}

TEST(Holder, Examples) {
    const auto grid = make_grid(1e-6, 1.0, 400, 2.0);
    EXPECT_EQ(discrete_holder_seminorm(std::vector<double>(grid.size(), 3.0), 0.3, grid), 0.0);
    EXPECT_NEAR(discrete_holder_seminorm(grid.x, 0.0, grid), 1.0 - 1e-6, 1e-14);
    const double s = discrete_holder_seminorm(sample(grid, [](double x) { return std::sqrt(x); }), 0.5, grid);
    EXPECT_GT(s, 0.99);
    EXPECT_LE(s, 1.0 + 1e-12);
}

TEST(Residuals, ExactConeVanishes) {
    FlowConfig c;
    c.N = 60;
    c.t_end = 1e-4;
    c.store_every = 1;
    const auto traj = run_flow(c);
    ASSERT_GE(traj.states.size(), 3u);
    EXPECT_EQ(scalar_evolution_residual(traj).sup(), 0.0);
    EXPECT_EQ(ricci_evolution_residual(traj).sup(), 0.0);
}

TEST(Residuals, TooFewLevelsThrow) {
    FlowConfig c;
    c.N = 20;
    c.t_end = 1e-4;
    const auto traj = run_flow(c);
    ASSERT_LT(traj.states.size(), 3u);
    EXPECT_THROW(scalar_evolution_residual(traj), std::invalid_argument);
}

TEST(Residuals, ShrinkingSphereDecreasesUnderRefinement) {
    // Measured away from the excised poles, where 1/phi^2 amplifies the spatial error.
    auto sups = [](int N) {
        auto c = sphere_config(N, 4e-4);
        c.dt = 2e-5;
        const auto traj = run_flow(c);
        EXPECT_TRUE(traj.outcome.completed);
        const auto fine = scalar_evolution_residual(traj, ResidualOptions{3, 1, 0.0});
        const auto coarse = scalar_evolution_residual(traj, ResidualOptions{3, 2, 0.0});
        return std::pair{band_max(richardson(fine, coarse, 2), 0.5, 2.6),
                         band_max(ricci_evolution_residual(traj), 0.5, 2.6)};
    };
    const auto [s1, r1] = sups(50);
    const auto [s2, r2] = sups(100);
    EXPECT_GT(observed_order(s1, s2), 1.8) << s1 << " " << s2;
    EXPECT_GT(observed_order(r1, r2), 1.5) << r1 << " " << r2;
}

TEST(Residuals, PerturbedConeConvergesAwayFromExcisionEnds) {
    // Sup over x in [0.2, 0.9], outside the layers the pinned ends seed during t <= 1e-4.
    auto run = [](int N) {
        FlowConfig c;
        c.profile = ProfileKind::perturbed_cone;
        c.background = BackgroundKind::exact_cone;
        c.x_min = 0.1;
        c.N = N;
        c.stencil_order = 2;
        c.t_end = 1e-4;
        c.dt = 1e-6;
        c.store_every = 10;
        return band_max(scalar_evolution_residual(run_flow(c), ResidualOptions{5, 1, 0.0}), 0.2, 0.9);
    };
    EXPECT_GT(observed_order(run(25), run(50)), 1.8);
}

TEST(TraceIdentity, HoldsToStencilAccuracy) {
    std::mt19937 rng(31);
    const auto p = random_profile(rng);
    const double e1 = trace_identity_defect(sample(unit_grid(40, 4), p.q(), p.phi()), 3);
    const double e2 = trace_identity_defect(sample(unit_grid(80, 4), p.q(), p.phi()), 3);
    // The identity is algebraic in the stencil data, so only rounding remains.
    EXPECT_LT(e1, 1e-8);
    EXPECT_LT(e2, 1e-8);
}

TEST(Monitors, ShrinkingSphereClosedForm) {
    const int n = 3;
    const auto traj = run_flow(sphere_config(100, 5e-3));
    const auto v = r_min_tracker(traj);
    EXPECT_TRUE(v.initial_nonnegative);
    EXPECT_TRUE(v.preserved);
    for (std::size_t k = 0; k < v.series.times.size(); ++k) {
        const double t = v.series.times[k];
        EXPECT_NEAR(v.series.R_min[k], n * (n + 1) / (1 - 2 * n * t), 1e-3);
    }
    for (double d : v.dR_min_dt) EXPECT_GT(d, 0.0);

    const auto r = ricci_weight_monitor(traj, 2.0);
    EXPECT_TRUE(r.bounded);
    for (std::size_t k = 0; k < r.series.times.size(); ++k)
        EXPECT_NEAR(r.series.sup_w_ric[k], n * std::sqrt(n + 1.0) / (1 - 2 * n * r.series.times[k]), 1e-3);
    EXPECT_THROW(ricci_weight_monitor(traj, 0.0), std::invalid_argument);
}

TEST(Monitors, ExactConeIsZero) {
    FlowConfig c;
    c.N = 60;
    c.t_end = 1e-4;
    const auto traj = run_flow(c);
    const auto v = r_min_tracker(traj);
    EXPECT_TRUE(v.preserved);
    for (double r : v.series.R_min) EXPECT_EQ(r, 0.0);
    for (double gp : {0.5, 2.0, 3.0}) {
        const auto m = ricci_weight_monitor(traj, gp);
        for (double s : m.series.sup_w_ric) EXPECT_EQ(s, 0.0);
    }
    const auto d = de_turck_monitor(traj, 1.0);
    EXPECT_TRUE(d.finite);
    EXPECT_EQ(d.sup, 0.0);
}

TEST(Monitors, PositiveCurvatureWarpedCone) {
    FlowConfig c;
    c.profile = ProfileKind::warped_cone;
    c.amplitude = 0.1;
    c.exponent = 2.0;
    c.N = 100;
    c.x_min = 0.1;
    c.boundary = BoundaryMode::neumann;
    c.t_end = 1e-2;
    const auto traj = run_flow(c);
    ASSERT_TRUE(traj.outcome.completed);
    const auto v = r_min_tracker(traj);
    EXPECT_GT(v.series.R_min.back(), v.series.R_min.front());
    EXPECT_TRUE(v.initial_nonnegative);
    EXPECT_TRUE(v.preserved);
}
