#include "conicflow/cone_geometry.hpp"
#include "conicflow/errors.hpp"
#include "conicflow/flow.hpp"
#include "oracle_compare.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace conicflow;
using namespace testing_support;

namespace {

WarpedMetric cone_like(const RadialGrid& grid, double c) { return sample(grid, [](double) { return 1.0; }, [c](double x) { return c * x; }); }

double inner_max_abs(const std::vector<double>& v) {
    double m = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

}  // namespace

TEST(Curvature, ExactConeIsFlat) {
    const auto grid = make_grid(0.01, 1.0, 200, 2.0);
    const auto c = curvature(exact_cone(grid), 3);
    EXPECT_EQ(inner_max_abs(c.scal), 0.0);
    EXPECT_EQ(inner_max_abs(c.ric.t_rr), 0.0);
    EXPECT_EQ(inner_max_abs(c.ric.t_sph), 0.0);
}

TEST(Curvature, RoundSphereHasRicciN) {
    for (int n : {2, 3, 5}) {
        const auto grid = make_grid(0.3, 2.8, 200, 1.0);
        const auto g = sample(grid, [](double) { return 1.0; }, [](double x) { return std::sin(x); });
        const auto c = curvature(g, make_round_sphere(n));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            EXPECT_NEAR(c.ric.t_rr[i], n, 1e-5);
            EXPECT_NEAR(c.ric.t_sph[i], n, 1e-5);
            EXPECT_NEAR(c.scal[i], n * (n + 1), 1e-4);
        }
    }
}

TEST(Curvature, ConeAngleC) {
    const int n = 3;
    const double cc = 0.8;
    const auto grid = make_grid(0.1, 1.0, 100, 1.0);
    const auto c = curvature(cone_like(grid, cc), n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.x[i];
        EXPECT_NEAR(c.ric.t_rr[i], 0.0, 1e-9);
        EXPECT_NEAR(c.ric.t_sph[i], (n - 1) * (1 - cc * cc) / (cc * cc * x * x), 1e-8 / (x * x));
    }
}

TEST(Christoffels, ConeValuesAndScaleInvariance) {
    const auto grid = make_grid(0.1, 1.0, 50, 1.0);
    const auto G = christoffels(exact_cone(grid));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(G.Gxxx[i], 0.0, 1e-12);
        EXPECT_NEAR(G.Gx_sph[i], -grid.x[i], 1e-12);
        EXPECT_NEAR(G.Gsph_x[i], 1.0 / grid.x[i], 1e-12);
    }
    std::mt19937 rng(1);
    const auto p = random_profile(rng);
    const auto g = sample(grid, p.q(), p.phi());
    auto g2 = g;
    for (auto& v : g2.q) v *= 4.0;
    for (auto& v : g2.phi) v *= 2.0;
    const auto a = christoffels(g), b = christoffels(g2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(a.Gxxx[i], b.Gxxx[i], 1e-12);
        EXPECT_NEAR(a.Gx_sph[i], b.Gx_sph[i], 1e-12);
        EXPECT_NEAR(a.Gsph_x[i], b.Gsph_x[i], 1e-12);
    }
}

TEST(DeTurck, VanishesForEqualAndScaledMetrics) {
    std::mt19937 rng(2);
    const auto grid = make_grid(0.2, 1.2, 80, 1.0);
    const auto p = random_profile(rng);
    const auto g = sample(grid, p.q(), p.phi());
    EXPECT_LT(inner_max_abs(de_turck_field(g, g, 3).wx), 1e-12);
    auto g2 = g;
    for (auto& v : g2.q) v *= 9.0;
    for (auto& v : g2.phi) v *= 3.0;
    EXPECT_LT(inner_max_abs(de_turck_field(g2, g, 3).wx), 1e-12);
    // Scaling both metrics by 9 divides W by 9 since Christoffels are scale invariant.
    auto h = exact_cone(grid);
    const auto wa = de_turck_field(g, h, 3);
    for (auto& v : h.q) v *= 9.0;
    for (auto& v : h.phi) v *= 3.0;
    const auto wb = de_turck_field(g2, h, 3);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(9.0 * wb.wx[i], wa.wx[i], 1e-10);
}

TEST(DeTurck, StretchedConeAgainstExactCone) {
    const int n = 3;
    const double eps = 0.05;
    const auto grid = make_grid(0.1, 1.0, 100, 1.0);
    const auto w = de_turck_field(cone_like(grid, 1 + eps), exact_cone(grid), n);
    for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_NEAR(w.wx[i], (n / grid.x[i]) * (1 / ((1 + eps) * (1 + eps)) - 1), 1e-9);
}

TEST(DeTurck, AnalyticDerivativeMatchesStencil) {
    std::mt19937 rng(8);
    const auto grid = make_grid(0.5, 1.5, 400, 1.0);
    const auto pg = random_profile(rng), ph = random_profile(rng);
    const auto w = de_turck_field(sample(grid, pg.q(), pg.phi()), sample(grid, ph.q(), ph.phi()), 3);
    const auto num = grid.diff->d1(w.wx);
    for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(w.dwx[i], num[i], 1e-6);
}

TEST(LieDerivative, ZeroAndEulerField) {
    const auto grid = make_grid(0.1, 1.0, 60, 1.0);
    const auto cone = exact_cone(grid);
    const auto zero = lie_derivative_radial(RadialVectorField{std::vector<double>(grid.size(), 0.0), {}}, cone);
    EXPECT_EQ(inner_max_abs(zero.xx), 0.0);
    EXPECT_EQ(inner_max_abs(zero.sph), 0.0);
    const auto euler = lie_derivative_radial(RadialVectorField{grid.x, {}}, cone);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(euler.xx[i], 2.0, 1e-10);
        EXPECT_NEAR(euler.sph[i], 2.0 * grid.x[i] * grid.x[i], 1e-10);
    }
}

TEST(ConformalRicci, ZeroAndConstantFactor) {
    std::mt19937 rng(4);
    const auto grid = make_grid(0.5, 1.5, 80, 1.0);
    const auto p = random_profile(rng);
    const auto g = sample(grid, p.q(), p.phi());
    const auto base = curvature(g, 3).ric;
    const auto r0 = conformal_ricci(g, std::vector<double>(grid.size(), 0.0), 3);
    const auto rc = conformal_ricci(g, std::vector<double>(grid.size(), 0.7), 3);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(r0.t_rr[i], base.t_rr[i], 1e-12);
        EXPECT_NEAR(r0.t_sph[i], base.t_sph[i], 1e-12);
        EXPECT_NEAR(rc.t_rr[i], base.t_rr[i], 1e-9);
        EXPECT_NEAR(rc.t_sph[i], base.t_sph[i], 1e-9);
    }
    EXPECT_THROW(conformal_ricci(g, std::vector<double>(grid.size(), -1.0), 3), std::invalid_argument);
}

TEST(ConformalRicci, MatchesDirectRecomputation) {
    std::mt19937 rng(6);
    const auto p = random_profile(rng);
    const Fn u = conformal_u();
    const Fn q = p.q(), phi = p.phi();
    double prev = 0;
    for (int N : {40, 80}) {
        const auto grid = make_grid(0.5, 1.5, N, 1.0, 2);
        const auto g = sample(grid, q, phi);
        const auto gc = sample(grid, [&](double x) { return (1 + u(x)) * q(x); }, [&](double x) { return std::sqrt(1 + u(x)) * phi(x); });
        const auto direct = curvature(gc, 3).ric;
        const auto conf = conformal_ricci(g, sample(grid, u), 3);
        double e = 0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            const double f = 1 + u(grid.x[i]);
            e = std::max({e, std::abs(conf.t_rr[i] - f * direct.t_rr[i]), std::abs(conf.t_sph[i] - f * direct.t_sph[i])});
        }
        if (prev > 0) {
            EXPECT_GT(order_of(prev, e), 1.8);
        }
        prev = e;
    }
}

TEST(Lichnerowicz, MetricAndConformalMultiples) {
    std::mt19937 rng(9);
    const auto grid = make_grid(0.5, 1.5, 200, 1.0);
    const auto p = random_profile(rng);
    const auto g = sample(grid, p.q(), p.phi());
    const int n = 3;
    const auto one = std::vector<double>(grid.size(), 1.0);
    const auto lg = lichnerowicz_diagonal(g, DiagonalTwoTensor{one, one}, n);
    EXPECT_LT(inner_max_abs(lg.t_rr), 1e-9);
    EXPECT_LT(inner_max_abs(lg.t_sph), 1e-9);
    const auto f = sample(grid, test_function());
    const auto lf = lichnerowicz_diagonal(g, DiagonalTwoTensor{f, f}, n);
    const auto lap = scalar_laplacian(g, f, n);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        EXPECT_NEAR(lf.t_rr[i], lap[i], 1e-10);
        EXPECT_NEAR(lf.t_sph[i], lap[i], 1e-10);
    }
}

TEST(Lichnerowicz, RicciOfRoundSphere) {
    const int n = 3;
    const auto grid = make_grid(0.3, 2.8, 200, 1.0);
    const auto g = sample(grid, [](double) { return 1.0; }, [](double x) { return std::sin(x); });
    const auto l = lichnerowicz_diagonal(g, curvature(g, n).ric, make_round_sphere(n));
    EXPECT_LT(inner_max_abs(l.t_rr), 1e-3);
    EXPECT_LT(inner_max_abs(l.t_sph), 1e-3);
}

TEST(Lichnerowicz, ContractedIdentityForConformalTensors) {
    std::mt19937 rng(10);
    const auto grid = make_grid(0.5, 1.5, 120, 1.0);
    const auto p = random_profile(rng);
    const auto g = sample(grid, p.q(), p.phi());
    const int n = 4;
    const auto f = sample(grid, tensor_rr());
    const auto tr = lichnerowicz_diagonal(g, DiagonalTwoTensor{f, f}, n).frame_trace(n);
    std::vector<double> trace_f(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) trace_f[i] = (n + 1) * f[i];
    const auto lap = scalar_laplacian(g, trace_f, n);
    for (std::size_t i = 1; i + 1 < f.size(); ++i) EXPECT_NEAR(tr[i], lap[i], 1e-9);
}

TEST(OracleAgreement, AllOperationsConvergeAtSecondOrder) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 2; ++trial) {
        const auto pg = random_profile(rng), ph = random_profile(rng);
        const auto ov = oracle_values(pg, ph, 3);
        const auto e1 = closed_form_errors(pg, ph, ov, 3, 40, 2).all();
        const auto e2 = closed_form_errors(pg, ph, ov, 3, 80, 2).all();
        const auto fine = closed_form_errors(pg, ph, ov, 3, 160, 4).all();
        for (int k = 0; k < 7; ++k) {
            EXPECT_GT(order_of(e1[k], e2[k]), 1.8) << op_name(k) << " " << e1[k] << " " << e2[k];
            EXPECT_LT(fine[k], 1e-5) << op_name(k);
        }
    }
}

TEST(PerturbationDecay, SyntheticInjections) {
    const int n = 3;
    const auto grid = make_grid(0.01, 1.0, 200, 2.0);
    const auto cone = exact_cone(grid);
    EXPECT_TRUE(perturbation_decay(cone, cone, n).exact);

    auto g = cone;
    for (std::size_t i = 0; i < grid.size(); ++i) g.q[i] = 1 + 0.01 * std::pow(grid.x[i], 1.5);
    auto d = perturbation_decay(g, cone, n);
    EXPECT_FALSE(d.exact);
    EXPECT_NEAR(d.gamma_hat, 1.5, 0.05);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.x[i];
        g.q[i] = 1 + 0.01 * std::sqrt(x) * (1 + 0.01 * std::sin(std::log(x)));
    }
    d = perturbation_decay(g, cone, n);
    EXPECT_NEAR(d.gamma_hat, 0.5, 0.05);
}

TEST(MetricCsv, RoundTripAndErrors) {
    std::mt19937 rng(13);
    const auto grid = make_grid(0.5, 1.5, 40, 1.0);
    const auto p = random_profile(rng);
    const auto g = sample(grid, p.q(), p.phi());
    const auto back = metric_from_csv(metric_to_csv(g));
    EXPECT_EQ(back.grid.x, g.grid.x);
    EXPECT_EQ(back.q, g.q);
    EXPECT_EQ(back.phi, g.phi);
    EXPECT_THROW(metric_from_csv("x,q,phi\n1,2\n"), ConfigError);
    EXPECT_THROW(metric_from_csv("x,q,phi\n1,1,-1\n2,1,1\n"), ConfigError);
}
