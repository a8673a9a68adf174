#include "conicflow/flow.hpp"

#include "conicflow/config.hpp"
#include "conicflow/diagnostics.hpp"
#include "conicflow/errors.hpp"
#include "conicflow/keyvalue.hpp"
#include "conicflow/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

namespace conicflow {

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::exact_cone: return "exact_cone";
        case ProfileKind::shrinking_sphere: return "shrinking_sphere";
        case ProfileKind::perturbed_cone: return "perturbed_cone";
        case ProfileKind::warped_cone: return "warped_cone";
        case ProfileKind::from_file: return "from_file";
    }
    return "unknown";
}

std::string to_string(BackgroundKind k) { return k == BackgroundKind::exact_cone ? "exact_cone" : "initial_metric"; }

std::string to_string(BoundaryMode k) {
    switch (k) {
        case BoundaryMode::dirichlet: return "dirichlet";
        case BoundaryMode::homothetic: return "homothetic";
        case BoundaryMode::neumann: return "neumann";
    }
    return "unknown";
}

void validate(const FlowConfig& c) {
    auto fail = [](const std::string& msg) { throw ConfigError("invalid config: " + msg); };
    if (c.n < 2) fail("n must be at least 2");
    if (c.profile != ProfileKind::from_file) {
        if (!(c.x_min > 0.0)) fail("grid.x_min must be positive");
        if (!(c.x_max > c.x_min)) fail("grid.x_max must exceed grid.x_min");
        if (c.N < 16) fail("grid.N must be at least 16");
        if (!(c.grading >= 1.0)) fail("grid.p must be at least 1");
    }
    if (c.stencil_order != 2 && c.stencil_order != 4) fail("stencil_order must be 2 or 4");
    if (!(c.cfl > 0.0 && c.cfl <= 1.0)) fail("cfl must lie in (0, 1]");
    if (!(c.t_end > 0.0)) fail("t_end must be positive");
    if (c.dt && !(*c.dt > 0.0)) fail("dt must be positive");
    if (c.checkpoint_interval < 0.0) fail("checkpoint_interval must be nonnegative");
    if (c.series_every < 1) fail("series_every must be at least 1");
    if (c.store_every < 0) fail("store_every must be nonnegative");
    if (!(c.gamma_prime > 0.0)) fail("gamma_prime must be positive");
    if (!(c.weights_gamma > 0.0)) fail("weights.gamma must be positive");
    if (c.profile == ProfileKind::from_file && c.profile_file.empty()) fail("initial.file is required for from_file");
    if (c.profile == ProfileKind::shrinking_sphere && c.x_max >= M_PI) fail("shrinking_sphere needs grid.x_max < pi");
    if (c.boundary == BoundaryMode::homothetic && !(2.0 * c.n * c.t_end < 1.0))
        fail("homothetic boundary needs t_end < 1/(2n)");
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t config_hash(const FlowConfig& config) {
    return fnv1a64(config.source_text.empty() ? config_to_text(config) : config.source_text);
}

RadialGrid make_grid(double x_min, double x_max, int N, double p, int stencil_order) {
    if (!(x_min > 0.0) || !(x_max > x_min)) throw std::invalid_argument("make_grid needs 0 < x_min < x_max");
    if (N < 2) throw std::invalid_argument("make_grid needs N >= 2");
    if (!(p >= 1.0)) throw std::invalid_argument("make_grid needs p >= 1");
    std::vector<double> x(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) x[i] = x_min + (x_max - x_min) * std::pow(static_cast<double>(i) / N, p);
    x.back() = x_max;
    return RadialGrid::from_nodes(std::move(x), stencil_order, p);
}

RadialGrid config_grid(const FlowConfig& config) {
    if (config.profile == ProfileKind::from_file)
        return metric_from_csv(read_text_file(config.profile_file), config.stencil_order).grid;
    return make_grid(config.x_min, config.x_max, config.N, config.grading, config.stencil_order);
}

WarpedMetric initial_metric(const FlowConfig& config, const RadialGrid& grid) {
    if (config.profile == ProfileKind::from_file) {
        WarpedMetric g = metric_from_csv(read_text_file(config.profile_file), config.stencil_order);
        if (!g.grid.same_nodes(grid)) throw ConfigError("initial.file nodes differ from the grid");
        g.grid = grid;
        return g;
    }
    WarpedMetric g{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size())};
    const double a = config.amplitude;
    const double b = config.exponent;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.x[i];
        switch (config.profile) {
            case ProfileKind::exact_cone:
                g.q[i] = 1.0;
                g.phi[i] = x;
                break;
            case ProfileKind::shrinking_sphere:
                g.q[i] = 1.0;
                g.phi[i] = std::sin(x);
                break;
            case ProfileKind::perturbed_cone: {
                const double factor = 1.0 + a * std::pow(x, b);
                g.q[i] = factor;
                g.phi[i] = x * std::sqrt(factor);
                break;
            }
            case ProfileKind::warped_cone:
                g.q[i] = 1.0;
                g.phi[i] = x * (1.0 - a * std::pow(x, b));
                break;
            case ProfileKind::from_file: break;
        }
    }
    try {
        g.check();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("initial profile: ") + e.what());
    }
    return g;
}

RhsResult rtf_rhs(const WarpedMetric& g, const WarpedMetric& h, int n) {
    const auto c = curvature(g, n);
    const auto w = de_turck_field(g, h, n);
    const auto lie = lie_derivative_radial(w, g);
    RhsResult r;
    r.dq_dt.resize(g.q.size());
    r.dphi2_dt.resize(g.q.size());
    for (std::size_t i = 0; i < g.q.size(); ++i) {
        r.dq_dt[i] = -2.0 * g.q[i] * c.ric.t_rr[i] + lie.xx[i];
        r.dphi2_dt[i] = -2.0 * g.phi[i] * g.phi[i] * c.ric.t_sph[i] + lie.sph[i];
    }
    return r;
}

RhsResult rtf_rhs(const FlowState& state, const WarpedMetric& h, const CrossSection& cs) {
    if (cs.einstein_constant != Rational(cs.n - 1)) throw std::invalid_argument("cross-section must have Einstein constant n-1");
    return rtf_rhs(state.g, h, cs.n);
}

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

namespace {

struct EndStencil {
    std::size_t i0, i1, i2;
    std::vector<double> w;
};

EndStencil end_stencil(const std::vector<double>& x, bool inner) {
    const std::size_t m = x.size();
    EndStencil e{inner ? 0 : m - 1, inner ? 1 : m - 2, inner ? 2 : m - 3, {}};
    const std::vector<double> nodes{x[e.i0], x[e.i1], x[e.i2]};
    e.w = fornberg_weights(x[e.i0], nodes, 1)[1];
    return e;
}

double end_slope(const std::vector<double>& f, const EndStencil& e) {
    return e.w[0] * f[e.i0] + e.w[1] * f[e.i1] + e.w[2] * f[e.i2];
}

/// Sets the end value of f so that its three-point one-sided slope equals `slope`.
void impose_slope(std::vector<double>& f, const EndStencil& e, double slope) {
    f[e.i0] = (slope - e.w[1] * f[e.i1] - e.w[2] * f[e.i2]) / e.w[0];
}

std::vector<double> phi_over_x(const WarpedMetric& g) {
    std::vector<double> r(g.phi.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = g.phi[i] / g.grid.x[i];
    return r;
}

}  // namespace

BoundaryData make_boundary(const FlowConfig& config, const WarpedMetric& initial) {
    BoundaryData bc;
    bc.mode = config.boundary;
    const std::size_t last = initial.q.size() - 1;
    // Initial values at both ends; pinning the tip node to the exact cone instead
    // would put a kink of size amplitude * x_min^exponent into the data.
    bc.q_inner = initial.q.front();
    bc.phi_inner = initial.phi.front();
    bc.q_outer = initial.q[last];
    bc.phi_outer = initial.phi[last];
    if (config.boundary == BoundaryMode::homothetic) bc.shrink_rate = 2.0 * config.n;
    if (config.boundary == BoundaryMode::neumann) {
        const auto& x = initial.grid.x;
        const auto ratio = phi_over_x(initial);
        const EndStencil lo = end_stencil(x, true), hi = end_stencil(x, false);
        bc.q_inner = end_slope(initial.q, lo);
        bc.phi_inner = end_slope(ratio, lo);
        bc.q_outer = end_slope(initial.q, hi);
        bc.phi_outer = end_slope(ratio, hi);
    }
    return bc;
}

void apply_boundary(WarpedMetric& g, const BoundaryData& bc, double t) {
    if (bc.mode == BoundaryMode::neumann) {
        const auto& x = g.grid.x;
        auto ratio = phi_over_x(g);
        const EndStencil lo = end_stencil(x, true), hi = end_stencil(x, false);
        impose_slope(g.q, lo, bc.q_inner);
        impose_slope(ratio, lo, bc.phi_inner);
        impose_slope(g.q, hi, bc.q_outer);
        impose_slope(ratio, hi, bc.phi_outer);
        g.phi.front() = ratio.front() * x.front();
        g.phi.back() = ratio.back() * x.back();
        if (!(g.q.front() > 0.0 && g.q.back() > 0.0 && g.phi.front() > 0.0 && g.phi.back() > 0.0))
            throw NumericalFailure("reflected end values lost positivity at t = " + g17(t));
        return;
    }
    const double s = 1.0 - bc.shrink_rate * t;
    if (!(s > 0.0)) throw NumericalFailure("homothetic boundary collapsed at t = " + g17(t));
    const double r = bc.shrink_rate == 0.0 ? 1.0 : std::sqrt(s);
    g.q.front() = s * bc.q_inner;
    g.phi.front() = r * bc.phi_inner;
    g.q.back() = s * bc.q_outer;
    g.phi.back() = r * bc.phi_outer;
}

namespace {

WarpedMetric stage(const WarpedMetric& base, const std::vector<double>& phi2, const RhsResult& k, double h,
                   const BoundaryData& bc, double t) {
    WarpedMetric g = base;
    for (std::size_t i = 0; i < g.q.size(); ++i) {
        g.q[i] = base.q[i] + h * k.dq_dt[i];
        const double p2 = phi2[i] + h * k.dphi2_dt[i];
        if (!std::isfinite(g.q[i]) || !std::isfinite(p2) || !(g.q[i] > 0.0) || !(p2 > 0.0))
            throw NumericalFailure("positivity lost at x = " + g17(base.grid.x[i]));
        g.phi[i] = std::sqrt(p2);
    }
    apply_boundary(g, bc, t);
    return g;
}

}  // namespace

FlowState step_rk4(const FlowState& state, const WarpedMetric& h, int n, double dt, const BoundaryData& bc) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_rk4 needs dt > 0");
    const WarpedMetric& g0 = state.g;
    for (std::size_t i = 0; i < g0.q.size(); ++i)
        if (!(g0.q[i] > 0.0 && g0.phi[i] > 0.0)) throw NumericalFailure("nonpositive metric at x = " + g17(g0.grid.x[i]));
    std::vector<double> phi2(g0.phi.size());
    for (std::size_t i = 0; i < phi2.size(); ++i) phi2[i] = g0.phi[i] * g0.phi[i];

    const RhsResult k1 = rtf_rhs(g0, h, n);
    const double t = state.t;
    const RhsResult k2 = rtf_rhs(stage(g0, phi2, k1, 0.5 * dt, bc, t + 0.5 * dt), h, n);
    const RhsResult k3 = rtf_rhs(stage(g0, phi2, k2, 0.5 * dt, bc, t + 0.5 * dt), h, n);
    const RhsResult k4 = rtf_rhs(stage(g0, phi2, k3, dt, bc, t + dt), h, n);
    RhsResult sum;
    sum.dq_dt.resize(phi2.size());
    sum.dphi2_dt.resize(phi2.size());
    for (std::size_t i = 0; i < phi2.size(); ++i) {
        sum.dq_dt[i] = (k1.dq_dt[i] + 2.0 * k2.dq_dt[i] + 2.0 * k3.dq_dt[i] + k4.dq_dt[i]) / 6.0;
        sum.dphi2_dt[i] = (k1.dphi2_dt[i] + 2.0 * k2.dphi2_dt[i] + 2.0 * k3.dphi2_dt[i] + k4.dphi2_dt[i]) / 6.0;
    }
    FlowState next;
    next.g = stage(g0, phi2, sum, dt, bc, t + dt);
    next.t = state.t + dt;
    next.step = state.step + 1;
    return next;
}

double choose_dt(const FlowState& state, double cfl) {
    const auto& x = state.g.grid.x;
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double dx = x[i + 1] - x[i];
        m = std::min(m, dx * dx * state.g.q[i]);
    }
    return cfl * m / 2.0;
}

SeriesRow series_row(const FlowState& state, const WarpedMetric& h, int n, const FlowConfig& config, double dt) {
    const auto c = curvature(state.g, n);
    const auto w = de_turck_field(state.g, h, n);
    const auto& grid = state.g.grid;
    SeriesRow row;
    row.t = state.t;
    row.dt = dt;
    const auto inner = inner_range(grid);
    row.R_min = std::numeric_limits<double>::infinity();
    row.R_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = inner.first; i < inner.second; ++i) {
        row.R_min = std::min(row.R_min, c.scal[i]);
        row.R_max = std::max(row.R_max, c.scal[i]);
        row.wmax = std::max(row.wmax, std::abs(w.wx[i]));
    }
    row.sup_w_ric = weighted_sup(c.ric.frame_norms(n), config.gamma_prime - 2.0, grid);
    row.gamma_hat = decay_exponent(state.g, n);
    return row;
}

CrossSection config_cross_section(const FlowConfig& config) {
    if (config.cross_section == "sphere") return make_round_sphere(config.n);
    CrossSection cs = load_cross_section(config.cross_section);
    if (cs.n != config.n)
        throw ConfigError("cross-section file has n = " + std::to_string(cs.n) + " but config has n = " +
                          std::to_string(config.n));
    return cs;
}

std::string series_header() { return "t,R_min,R_max,sup_w_ric,gamma_hat,wmax,dt"; }

std::string series_to_csv(const std::vector<SeriesRow>& rows) {
    std::string out = series_header() + "\n";
    for (const auto& r : rows)
        out += g17(r.t) + "," + g17(r.R_min) + "," + g17(r.R_max) + "," + g17(r.sup_w_ric) + "," + g17(r.gamma_hat) + "," +
               g17(r.wmax) + "," + g17(r.dt) + "\n";
    return out;
}

namespace {

namespace fs = std::filesystem;

std::string checkpoint_stem(int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "checkpoint_%04d", index);
    return buf;
}

char hex_digit(unsigned v) { return "0123456789abcdef"[v & 15u]; }

std::string hex64(std::uint64_t v) {
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = hex_digit(static_cast<unsigned>(v));
    return s;
}

struct Writer {
    const FlowConfig& config;
    FlowTrajectory& traj;

    bool enabled() const { return !config.output_dir.empty(); }

    std::string path(const std::string& name) const { return (fs::path(config.output_dir) / name).string(); }

    void note(const std::string& p) {
        if (std::find(traj.files.begin(), traj.files.end(), p) == traj.files.end()) traj.files.push_back(p);
    }

    void config_copy() {
        if (!enabled()) return;
        fs::create_directories(config.output_dir);
        const std::string p = path("config.txt");
        write_text_file(p, config.source_text.empty() ? config_to_text(config) : config.source_text);
        note(p);
    }

    void checkpoint(const FlowState& s, int index) {
        if (!enabled()) return;
        const std::string stem = checkpoint_stem(index);
        write_text_file(path(stem + ".csv"), metric_to_csv(s.g));
        std::ostringstream meta;
        meta << "t = " << g17(s.t) << "\n"
             << "step = " << s.step << "\n"
             << "checkpoint_index = " << index << "\n"
             << "config_hash = " << hex64(config_hash(config)) << "\n"
             << "config_file = config.txt\n"
             << "snapshot = " << stem << ".csv\n";
        write_text_file(path(stem + ".meta"), meta.str());
        note(path(stem + ".csv"));
        note(path(stem + ".meta"));
    }

    void series() {
        if (!enabled()) return;
        write_text_file(path("series.csv"), series_to_csv(traj.series));
        note(path("series.csv"));
    }
};

struct Integration {
    FlowState state;
    int checkpoint_index = 0;  // last written
};

void integrate(FlowTrajectory& traj, Integration start, double t_end, Writer& writer) {
    const FlowConfig& config = traj.config;
    const BoundaryData bc = make_boundary(config, traj.initial);
    const double interval = config.checkpoint_interval;
    FlowState state = std::move(start.state);
    int ck = start.checkpoint_index;
    double last_dt = config.dt ? *config.dt : choose_dt(state, config.cfl);

    auto next_checkpoint_time = [&](int index) {
        if (interval <= 0.0) return t_end;
        return std::min(t_end, (index + 1) * interval);
    };
    auto store = [&](const FlowState& s) {
        if (traj.states.empty() || traj.states.back().step != s.step) traj.states.push_back(s);
    };

    while (state.t < t_end) {
        const double target = next_checkpoint_time(ck);
        double dt = config.dt ? *config.dt : choose_dt(state, config.cfl);
        bool hits_target = false;
        if (state.t + dt >= target * (1.0 - 1e-12) || state.t + dt >= target) {
            dt = target - state.t;
            hits_target = true;
        }
        if (!(dt > 0.0)) {
            // Checkpoint time already reached; advance the counter.
            ++ck;
            continue;
        }
        FlowState next;
        try {
            next = step_rk4(state, traj.background, traj.n, dt, bc);
        } catch (const NumericalFailure& e) {
            traj.outcome.completed = false;
            traj.outcome.t_reached = state.t;
            traj.outcome.message = std::string(e.what()) + " during step from t = " + g17(state.t);
            store(state);
            if (traj.series.empty() || traj.series.back().t != state.t)
                traj.series.push_back(series_row(state, traj.background, traj.n, config, last_dt));
            writer.series();
            return;
        }
        if (hits_target) next.t = target;
        last_dt = dt;
        state = std::move(next);

        const bool at_checkpoint = hits_target;
        if (at_checkpoint && (interval > 0.0 || state.t >= t_end)) {
            ++ck;
            writer.checkpoint(state, ck);
        }
        if (state.step % config.series_every == 0 || at_checkpoint)
            traj.series.push_back(series_row(state, traj.background, traj.n, config, dt));
        if ((config.store_every > 0 && state.step % config.store_every == 0) || at_checkpoint) store(state);
    }
    store(state);
    traj.outcome.completed = true;
    traj.outcome.t_reached = state.t;
    traj.outcome.message = "completed";
    writer.series();
}

FlowTrajectory prepare(const FlowConfig& config, const CrossSection& cs) {
    validate(config);
    if (cs.n != config.n) throw ConfigError("cross-section dimension does not match config n");
    FlowTrajectory traj;
    traj.config = config;
    traj.n = cs.n;
    const RadialGrid grid = config_grid(config);
    traj.initial = initial_metric(config, grid);
    traj.background = config.background == BackgroundKind::exact_cone ? exact_cone(grid) : traj.initial;
    return traj;
}

}  // namespace

FlowTrajectory run_flow(const FlowConfig& config) { return run_flow(config, config_cross_section(config)); }

FlowTrajectory run_flow(const FlowConfig& config, const CrossSection& cs) {
    FlowTrajectory traj = prepare(config, cs);
    Writer writer{traj.config, traj};
    writer.config_copy();

    FlowState s0;
    s0.g = traj.initial;
    apply_boundary(s0.g, make_boundary(config, traj.initial));
    traj.states.push_back(s0);
    traj.series.push_back(series_row(s0, traj.background, traj.n, config,
                                     config.dt ? *config.dt : choose_dt(s0, config.cfl)));
    integrate(traj, Integration{s0, 0}, config.t_end, writer);
    return traj;
}

FlowTrajectory resume_flow(const std::string& meta_path, std::optional<double> t_end) {
    const fs::path dir = fs::path(meta_path).parent_path();
    const auto entries = parse_key_values(read_text_file(meta_path), meta_path);
    std::string t_text, step_text, index_text, hash_text, config_file, snapshot;
    for (const auto& e : entries) {
        if (e.key == "t") t_text = e.value;
        else if (e.key == "step") step_text = e.value;
        else if (e.key == "checkpoint_index") index_text = e.value;
        else if (e.key == "config_hash") hash_text = e.value;
        else if (e.key == "config_file") config_file = e.value;
        else if (e.key == "snapshot") snapshot = e.value;
        else throw ConfigError(meta_path + ":" + std::to_string(e.line) + ": unknown key '" + e.key + "'");
    }
    if (t_text.empty() || step_text.empty() || index_text.empty() || hash_text.empty() || config_file.empty() ||
        snapshot.empty())
        throw ConfigError(meta_path + ": incomplete checkpoint metadata");

    const std::string config_path = (dir / config_file).string();
    const std::string text = read_text_file(config_path);
    FlowConfig config = parse_config_text(text, config_path).config;
    if (hex64(fnv1a64(text)) != hash_text) throw ConfigError(meta_path + ": config hash does not match " + config_path);
    config.output_dir = dir.string();
    if (t_end) config.t_end = *t_end;

    const CrossSection cs = config_cross_section(config);
    FlowTrajectory traj = prepare(config, cs);
    Writer writer{traj.config, traj};

    FlowState s;
    try {
        s.t = std::stod(t_text);
        s.step = std::stol(step_text);
    } catch (const std::exception&) {
        throw ConfigError(meta_path + ": malformed t or step");
    }
    WarpedMetric g = metric_from_csv(read_text_file((dir / snapshot).string()), config.stencil_order);
    if (!g.grid.same_nodes(traj.initial.grid)) throw ConfigError(meta_path + ": snapshot grid differs from config grid");
    g.grid = traj.initial.grid;
    s.g = std::move(g);
    const int index = std::stoi(index_text);

    // Keep the series rows recorded up to the checkpoint.
    const std::string series_path = (dir / "series.csv").string();
    if (fs::exists(series_path)) {
        std::istringstream in(read_text_file(series_path));
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            SeriesRow r;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &r.t, &r.R_min, &r.R_max, &r.sup_w_ric,
                            &r.gamma_hat, &r.wmax, &r.dt) != 7)
                throw ConfigError(series_path + ": malformed row");
            if (r.t <= s.t) traj.series.push_back(r);
        }
    }
    traj.states.push_back(s);
    if (s.t >= config.t_end) {
        traj.outcome = {true, s.t, "already at t_end"};
        writer.series();
        return traj;
    }
    integrate(traj, Integration{s, index}, config.t_end, writer);
    return traj;
}

}  // namespace conicflow
