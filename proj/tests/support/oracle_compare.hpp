#pragma once

// Closed-form radial geometry against the chart oracle at x = 0.75, 1, 1.25.

#include "profiles.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace testing_support {

struct OpErrors {
    double curvature = 0.0;
    double christoffel = 0.0;
    double de_turck = 0.0;
    double lie = 0.0;
    double laplacian = 0.0;
    double lichnerowicz = 0.0;
    double conformal = 0.0;

    std::array<double, 7> all() const { return {curvature, christoffel, de_turck, lie, laplacian, lichnerowicz, conformal}; }
};

inline const char* op_name(int k) {
    static const char* names[] = {"curvature", "christoffels", "de_turck_field", "lie_derivative_radial",
                                  "scalar_laplacian", "lichnerowicz_diagonal", "conformal_ricci"};
    return names[k];
}

/// Oracle values depend only on the profiles, so they are computed once per
/// profile pair and reused across grids.
struct OracleValues {
    struct AtPoint {
        double x;
        double ric_rr, ric_sph, scal;
        double Gxxx, Gx_sph, Gsph_x;
        double wx;
        double lie_xx, lie_sph;
        double lap;
        double lich_rr, lich_sph;
        double conf_rr, conf_sph;
    };
    std::vector<AtPoint> points;
};

inline Fn test_field() {
    return [](double x) { return 0.3 * std::sin(x) + 0.1 * x; };
}
inline Fn test_function() {
    return [](double x) { return std::cos(1.3 * x); };
}
inline Fn tensor_rr() {
    return [](double x) { return 1.0 + 0.5 * std::sin(x); };
}
inline Fn tensor_sph() {
    return [](double x) { return 0.3 * std::cos(2.0 * x); };
}
inline Fn conformal_u() {
    return [](double x) { return 0.2 * std::sin(1.7 * x); };
}

inline OracleValues oracle_values(const Profile& pg, const Profile& ph, int n) {
    using namespace oracle;
    const Fn q = pg.q(), phi = pg.phi();
    const ChartOracle og(warped_metric(n, q, phi));
    const ChartOracle oh(warped_metric(n, ph.q(), ph.phi()));
    const Fn u = conformal_u();
    const ChartOracle oc(warped_metric(
        n, [q, u](double x) { return (1 + u(x)) * q(x); }, [phi, u](double x) { return std::sqrt(1 + u(x)) * phi(x); }));
    OracleValues out;
    for (double x : {0.75, 1.0, 1.25}) {
        const Point z = chart_point(n, x);
        const Mat g = og.metric(z);
        const double gF11 = g(1, 1) / (phi(x) * phi(x));
        OracleValues::AtPoint p{};
        p.x = x;
        const auto ric = frame_components(og.ricci(z), g);
        p.ric_rr = ric.rr;
        p.ric_sph = ric.sph;
        p.scal = og.scalar(z);
        const auto G = og.christoffel(z);
        p.Gxxx = G[0][0][0];
        p.Gx_sph = G[0][1][1] / gF11;
        p.Gsph_x = G[1][0][1];
        p.wx = og.de_turck(oh, z)[0];
        const Mat lie = og.lie_derivative(radial_field(n, test_field()), z);
        p.lie_xx = lie(0, 0);
        p.lie_sph = lie(1, 1) / gF11;
        const Fn f = test_function();
        p.lap = og.scalar_laplacian([f](const Point& y) { return f(y[0]); }, z);
        const auto lich = frame_components(og.lichnerowicz(diagonal_tensor(n, q, phi, tensor_rr(), tensor_sph()), z), g);
        p.lich_rr = lich.rr;
        p.lich_sph = lich.sph;
        const auto conf = frame_components(oc.ricci(z), oc.metric(z));
        p.conf_rr = conf.rr * (1 + u(x));
        p.conf_sph = conf.sph * (1 + u(x));
        out.points.push_back(p);
    }
    return out;
}

/// Sum over the three points of the absolute deviations, per operation.
/// N must be a multiple of 4.
inline OpErrors closed_form_errors(const Profile& pg, const Profile& ph, const OracleValues& ov, int n, int N, int order) {
    using namespace conicflow;
    const RadialGrid grid = unit_grid(N, order);
    const WarpedMetric g = sample(grid, pg.q(), pg.phi());
    const WarpedMetric h = sample(grid, ph.q(), ph.phi());
    const auto c = curvature(g, n);
    const auto G = christoffels(g);
    const auto w = de_turck_field(g, h, n);
    const auto lie = lie_derivative_radial(RadialVectorField{sample(grid, test_field()), {}}, g);
    const auto lap = scalar_laplacian(g, sample(grid, test_function()), n);
    const auto lich = lichnerowicz_diagonal(g, DiagonalTwoTensor{sample(grid, tensor_rr()), sample(grid, tensor_sph())}, n);
    const auto conf = conformal_ricci(g, sample(grid, conformal_u()), n);
    OpErrors e;
    for (const auto& p : ov.points) {
        const auto i = static_cast<std::size_t>(std::lround((p.x - 0.5) * N));
        e.curvature += std::abs(c.ric.t_rr[i] - p.ric_rr) + std::abs(c.ric.t_sph[i] - p.ric_sph) + std::abs(c.scal[i] - p.scal);
        e.christoffel += std::abs(G.Gxxx[i] - p.Gxxx) + std::abs(G.Gx_sph[i] - p.Gx_sph) + std::abs(G.Gsph_x[i] - p.Gsph_x);
        e.de_turck += std::abs(w.wx[i] - p.wx);
        e.lie += std::abs(lie.xx[i] - p.lie_xx) + std::abs(lie.sph[i] - p.lie_sph);
        e.laplacian += std::abs(lap[i] - p.lap);
        e.lichnerowicz += std::abs(lich.t_rr[i] - p.lich_rr) + std::abs(lich.t_sph[i] - p.lich_sph);
        e.conformal += std::abs(conf.t_rr[i] - p.conf_rr) + std::abs(conf.t_sph[i] - p.conf_sph);
    }
    return e;
}

}  // namespace testing_support
