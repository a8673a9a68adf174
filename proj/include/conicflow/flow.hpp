#pragma once

#include "conicflow/cone_geometry.hpp"
#include "conicflow/cross_section.hpp"
#include "conicflow/stability.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conicflow {

enum class ProfileKind { exact_cone, shrinking_sphere, perturbed_cone, warped_cone, from_file };
enum class BackgroundKind { initial_metric, exact_cone };
/// dirichlet pins both end nodes. homothetic moves them along (1 - 2nt) times
/// their initial values, which is exact for data with Ric = n g such as the
/// round sphere profile. neumann holds the one-sided slopes of q and phi/x at
/// their initial values, letting the end values follow the interior.
enum class BoundaryMode { dirichlet, homothetic, neumann };

std::string to_string(ProfileKind k);
std::string to_string(BackgroundKind k);
std::string to_string(BoundaryMode k);

struct FlowConfig {
    /// "sphere" for the unit round S^n, otherwise a cross-section file path.
    std::string cross_section = "sphere";
    int n = 3;

    double x_min = 0.01;
    double x_max = 1.0;
    int N = 200;
    double grading = 1.0;
    int stencil_order = 4;

    /// exact_cone: q = 1, phi = x. shrinking_sphere: q = 1, phi = sin x.
    /// perturbed_cone: (1 + a x^b) times the cone. warped_cone: q = 1, phi = x (1 - a x^b).
    ProfileKind profile = ProfileKind::exact_cone;
    double amplitude = 1e-3;
    double exponent = 1.5;
    std::string profile_file;

    BackgroundKind background = BackgroundKind::initial_metric;
    BoundaryMode boundary = BoundaryMode::dirichlet;

    double t_end = 0.01;
    double cfl = 0.5;
    /// Fixed step; overrides the CFL rule when set.
    std::optional<double> dt;
    /// 0 writes a checkpoint only at t_end.
    double checkpoint_interval = 0.0;
    /// Record a series row every this many steps (and at every checkpoint).
    int series_every = 10;
    /// Keep every this many steps in memory for residual diagnostics; 0 keeps checkpoints only.
    int store_every = 0;
    /// Empty disables file output.
    std::string output_dir;

    /// Weight exponents of the monitored Ricci sup (x^{2-gamma'}) and W proxy (x^{1-gamma_bar}).
    double gamma_prime = 2.0;
    double gamma_bar = 1.0;

    /// Weight window inputs for the report; u0 has no default.
    std::optional<Rational> u0;
    double weights_gamma = 2.0;
    MuVariant variant = MuVariant::squared;

    /// Text the config was parsed from, hashed into checkpoints.
    std::string source_text;
};

/// Throws ConfigError describing the first violated constraint.
void validate(const FlowConfig& config);

std::uint64_t fnv1a64(std::string_view text);
std::uint64_t config_hash(const FlowConfig& config);

struct FlowState {
    double t = 0.0;
    WarpedMetric g;
    long step = 0;
};

struct SeriesRow {
    double t = 0.0;
    double R_min = 0.0;
    double R_max = 0.0;
    double sup_w_ric = 0.0;
    /// +inf when the metric is exactly the cone.
    double gamma_hat = 0.0;
    double wmax = 0.0;
    double dt = 0.0;
};

struct FlowOutcome {
    bool completed = false;
    double t_reached = 0.0;
    std::string message;
};

struct FlowTrajectory {
    FlowConfig config;
    int n = 0;
    WarpedMetric background;
    WarpedMetric initial;
    /// Stored time levels in increasing time (always includes t = 0 and the last state).
    std::vector<FlowState> states;
    std::vector<SeriesRow> series;
    FlowOutcome outcome;
    std::vector<std::string> files;
};

/// x_i = x_min + (x_max - x_min) (i/N)^p.
RadialGrid make_grid(double x_min, double x_max, int N, double p, int stencil_order = 4);

WarpedMetric initial_metric(const FlowConfig& config, const RadialGrid& grid);
RadialGrid config_grid(const FlowConfig& config);

/// Coordinate time derivatives of q and phi^2 under -2 Ric + L_W g.
struct RhsResult {
    std::vector<double> dq_dt;
    std::vector<double> dphi2_dt;
};

RhsResult rtf_rhs(const WarpedMetric& g, const WarpedMetric& h, int n);
RhsResult rtf_rhs(const FlowState& state, const WarpedMetric& h, const CrossSection& cs);

/// Values enforced at the end nodes. In neumann mode the four numbers are the
/// end slopes of q and phi/x instead.
struct BoundaryData {
    BoundaryMode mode = BoundaryMode::dirichlet;
    double q_inner = 1.0;
    double phi_inner = 1.0;
    double q_outer = 1.0;
    double phi_outer = 1.0;
    /// End values at time t are (1 - shrink_rate t) q and sqrt(1 - shrink_rate t) phi.
    double shrink_rate = 0.0;
};

BoundaryData make_boundary(const FlowConfig& config, const WarpedMetric& initial);
void apply_boundary(WarpedMetric& g, const BoundaryData& bc, double t = 0.0);

/// Classical RK4 on (q, phi^2) with the boundary reimposed at each stage time.
/// Throws NumericalFailure on non-finite or nonpositive values.
FlowState step_rk4(const FlowState& state, const WarpedMetric& h, int n, double dt, const BoundaryData& bc);

/// cfl * min_i(dx_i^2 q_i) / 2 with dx_i the spacing to the right neighbour.
double choose_dt(const FlowState& state, double cfl);

SeriesRow series_row(const FlowState& state, const WarpedMetric& h, int n, const FlowConfig& config, double dt);

/// Integrates from t = 0. Numerical failure is reported in the outcome with
/// the last good state stored; file output goes to config.output_dir.
FlowTrajectory run_flow(const FlowConfig& config);
FlowTrajectory run_flow(const FlowConfig& config, const CrossSection& cs);

/// Continues from a checkpoint written by run_flow up to `t_end` (the
/// checkpointed config's t_end when absent).
FlowTrajectory resume_flow(const std::string& checkpoint_meta_path, std::optional<double> t_end = std::nullopt);

/// Cross-section named by the config (round sphere or file).
CrossSection config_cross_section(const FlowConfig& config);

std::string series_header();
std::string series_to_csv(const std::vector<SeriesRow>& rows);

}  // namespace conicflow
