#pragma once

#include "conicflow/cone_geometry.hpp"
#include "conicflow/cross_section.hpp"
#include "conicflow/flow.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace conicflow {

/// Half-open node range [1, N) used for every sup: the two end nodes carry
/// one-sided stencils.
std::pair<std::size_t, std::size_t> inner_range(const RadialGrid& grid);

/// max over inner nodes of x_i^{-w} |f_i|.
double weighted_sup(const std::vector<double>& f, double w, const RadialGrid& grid);

/// max over node pairs of |f_i - f_j| / |x_i - x_j|^alpha, alpha in [0, 1).
double discrete_holder_seminorm(const std::vector<double>& f, double alpha, const RadialGrid& grid);

struct ResidualOptions {
    /// Number of stored levels in each time-derivative stencil (3 or 5).
    int time_points = 3;
    /// Use every stride-th stored level.
    int stride = 1;
    /// Weight exponent of the reported sup.
    double weight = 0.0;
};

/// Signed per-node residuals of an evolution identity at stored time levels.
/// For the scalar identity only `rr` is filled.
struct ResidualSeries {
    std::vector<double> times;
    std::vector<long> steps;
    std::vector<std::vector<double>> rr;
    std::vector<std::vector<double>> sph;
    /// Weighted max over inner nodes, per time (frame norm for the Ricci identity).
    std::vector<double> max_residual;
    std::vector<double> x;
    int n = 0;
    double weight = 0.0;
    int stride = 1;
    int time_points = 3;

    double sup() const;
};

/// d_t R + Delta R - g(W, grad R) - 2|Ric|^2 at every used level.
/// Throws std::invalid_argument with fewer than 3 levels.
ResidualSeries scalar_evolution_residual(const FlowTrajectory& traj, const ResidualOptions& opts = {});
ResidualSeries scalar_evolution_residual(const FlowTrajectory& traj, const CrossSection& cs,
                                         const ResidualOptions& opts = {});

/// d_t Ric + Delta_L Ric - L_W Ric in the orthonormal frame of g(t).
ResidualSeries ricci_evolution_residual(const FlowTrajectory& traj, const ResidualOptions& opts = {});
ResidualSeries ricci_evolution_residual(const FlowTrajectory& traj, const CrossSection& cs,
                                        const ResidualOptions& opts = {});

/// Node-wise (2^order fine - coarse) / (2^order - 1) at the steps both series share.
/// `coarse` must use twice the stride of `fine`.
ResidualSeries richardson(const ResidualSeries& fine, const ResidualSeries& coarse, int order);

/// max over inner nodes of |frame trace of Delta_L Ric - Delta R|.
double trace_identity_defect(const WarpedMetric& g, int n);

/// Observed order log2(e_coarse / e_fine) for errors on grids h and h/2.
double observed_order(double e_coarse, double e_fine);

struct MonitorSeries {
    std::vector<double> times;
    std::vector<double> R_min;
    std::vector<std::size_t> argmin;
    /// sup x^{2 - gamma'} |Ric| (frame norm).
    std::vector<double> sup_w_ric;
    std::vector<double> gamma_hat;
    /// max |W^x| x^{1 - gamma_bar}.
    std::vector<double> w_proxy;
};

MonitorSeries monitor_series(const FlowTrajectory& traj, double gamma_prime, double gamma_bar);

struct PositivityVerdict {
    MonitorSeries series;
    /// Discrete d/dt of R_min between consecutive stored levels.
    std::vector<double> dR_min_dt;
    /// max(1e-6 max R(0), 1e-12).
    double tol_pos = 0.0;
    bool initial_nonnegative = false;
    /// R_min(t) >= -tol_pos at every stored level, given R_min(0) >= 0.
    bool preserved = false;
};

PositivityVerdict r_min_tracker(const FlowTrajectory& traj);
PositivityVerdict r_min_tracker(const FlowTrajectory& traj, const CrossSection& cs);

struct RicciBoundVerdict {
    MonitorSeries series;
    double initial = 0.0;
    double sup = 0.0;
    /// sup <= 2 * initial.
    bool bounded = false;
};

/// Throws std::invalid_argument for gamma_prime <= 0.
RicciBoundVerdict ricci_weight_monitor(const FlowTrajectory& traj, double gamma_prime);

struct DeTurckVerdict {
    MonitorSeries series;
    double sup = 0.0;
    bool finite = false;
};

DeTurckVerdict de_turck_monitor(const FlowTrajectory& traj, double gamma_bar);

}  // namespace conicflow
