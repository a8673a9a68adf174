#pragma once

#include "conicflow/cross_section.hpp"
#include "conicflow/stencil.hpp"

#include <memory>
#include <string>
#include <vector>

namespace conicflow {

/// Radial nodes x_0 = x_min > 0 < ... < x_N = x_max with their derivative
/// stencils. Copies share the stencils.
struct RadialGrid {
    std::vector<double> x;
    double grading = 1.0;
    std::shared_ptr<const Differentiator> diff;

    static RadialGrid from_nodes(std::vector<double> nodes, int stencil_order = 4, double grading = 1.0);

    std::size_t size() const { return x.size(); }
    bool same_nodes(const RadialGrid& other) const;
};

/// g = q dx^2 + phi^2 g_F.
struct WarpedMetric {
    RadialGrid grid;
    std::vector<double> q;
    std::vector<double> phi;

    /// Throws std::invalid_argument on size mismatch or a nonpositive q or phi.
    void check() const;
};

WarpedMetric exact_cone(const RadialGrid& grid);

/// Rotationally symmetric symmetric 2-tensor in the orthonormal frame of the
/// metric it was computed for.
struct DiagonalTwoTensor {
    std::vector<double> t_rr;
    std::vector<double> t_sph;

    /// sqrt(t_rr^2 + n t_sph^2) at node i.
    double frame_norm(std::size_t i, int n) const;
    std::vector<double> frame_norms(int n) const;
    /// t_rr + n t_sph.
    std::vector<double> frame_trace(int n) const;
};

/// Radial vector field W = wx d/dx. `dwx` holds dW^x/dx when the producer
/// computed it analytically; otherwise it is empty and consumers differentiate wx.
struct RadialVectorField {
    std::vector<double> wx;
    std::vector<double> dwx;
};

struct Curvature {
    DiagonalTwoTensor ric;
    std::vector<double> scal;
    /// Sectional curvature of radial planes.
    std::vector<double> k_rad;
    /// Sectional curvature of planes tangent to F.
    std::vector<double> k_sph;
};

/// Arclength derivatives of phi: phi_s = phi'/sqrt(q), phi_ss = (phi_s)'/sqrt(q).
struct ArclengthDerivatives {
    std::vector<double> phi_s;
    std::vector<double> phi_ss;
};

ArclengthDerivatives arclength_derivatives(const WarpedMetric& g);

/// Warped-product curvature with Ric_F = (n-1) g_F.
Curvature curvature(const WarpedMetric& g, int n);
Curvature curvature(const WarpedMetric& g, const CrossSection& cs);

/// The nonzero radial Christoffel symbols: Gamma^x_xx, Gamma^x_ab / (g_F)_ab and Gamma^a_xb / delta^a_b.
struct Christoffels {
    std::vector<double> Gxxx;
    std::vector<double> Gx_sph;
    std::vector<double> Gsph_x;
};

Christoffels christoffels(const WarpedMetric& g);

/// W^k = g^{ij}(Gamma^k_ij(g) - Gamma^k_ij(h)), radial component, with dwx
/// from the chain rule on first and second derivative stencils.
RadialVectorField de_turck_field(const WarpedMetric& g, const WarpedMetric& h, int n);

/// Coordinate components of L_W g: (L_W g)_xx and the coefficient of g_F.
struct LieDerivative {
    std::vector<double> xx;
    std::vector<double> sph;
};

LieDerivative lie_derivative_radial(const RadialVectorField& w, const WarpedMetric& g);

/// Positive Laplace-Beltrami operator -(f_ss + n (phi_s/phi) f_s) on radial functions.
std::vector<double> scalar_laplacian(const WarpedMetric& g, const std::vector<double>& f, int n);

/// Ricci tensor of (1+u) g, written in the orthonormal frame of g.
/// Throws std::invalid_argument if 1+u <= 0 somewhere.
DiagonalTwoTensor conformal_ricci(const WarpedMetric& g, const std::vector<double>& u, int n);

/// Lichnerowicz Laplacian (with the positive rough Laplacian) on the diagonal
/// class, frame components in and out.
DiagonalTwoTensor lichnerowicz_diagonal(const WarpedMetric& g, const DiagonalTwoTensor& t, int n);
DiagonalTwoTensor lichnerowicz_diagonal(const WarpedMetric& g, const DiagonalTwoTensor& t, const CrossSection& cs);

/// Least-squares slope of log |g - gbar|_gbar against log x over the inner
/// third of the grid (node 0 and zero-norm nodes skipped).
struct DecayEstimate {
    bool exact = false;
    double gamma_hat = 0.0;
    /// Standard error of the slope.
    double std_error = 0.0;
    /// Root-mean-square residual of the fit in log space.
    double residual = 0.0;
    int points = 0;
};

DecayEstimate perturbation_decay(const WarpedMetric& g, const WarpedMetric& gbar, int n);

/// gamma_hat relative to the exact cone for time series: +inf when exact, NaN when
/// fewer than three nodes of the fit window differ from the cone.
double decay_exponent(const WarpedMetric& g, int n);

/// Frame norm of g - gbar with respect to gbar at every node.
std::vector<double> perturbation_norm(const WarpedMetric& g, const WarpedMetric& gbar, int n);

/// CSV snapshot x,q,phi with 17 significant digits.
std::string metric_to_csv(const WarpedMetric& g);
/// Reads x,q,phi. Throws ConfigError on malformed input.
WarpedMetric metric_from_csv(const std::string& text, int stencil_order = 4);
std::string tensor_to_csv(const RadialGrid& grid, const DiagonalTwoTensor& t);

}  // namespace conicflow
