#include "conicflow/diagnostics.hpp"

#include "conicflow/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace conicflow {

std::pair<std::size_t, std::size_t> inner_range(const RadialGrid& grid) {
    if (grid.size() < 3) return {0, grid.size()};
    return {1, grid.size() - 1};
}

double weighted_sup(const std::vector<double>& f, double w, const RadialGrid& grid) {
    if (f.size() != grid.size()) throw std::invalid_argument("field size does not match grid");
    const auto [lo, hi] = inner_range(grid);
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::pow(grid.x[i], -w) * std::abs(f[i]));
    return m;
}

double discrete_holder_seminorm(const std::vector<double>& f, double alpha, const RadialGrid& grid) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in [0, 1)");
    if (f.size() != grid.size()) throw std::invalid_argument("field size does not match grid");
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j)
            m = std::max(m, std::abs(f[i] - f[j]) / std::pow(std::abs(grid.x[i] - grid.x[j]), alpha));
    return m;
}

double ResidualSeries::sup() const {
    double m = 0.0;
    for (double v : max_residual) m = std::max(m, v);
    return m;
}

namespace {

struct Level {
    const FlowState* state;
    Curvature curv;
};

std::vector<const FlowState*> select_levels(const FlowTrajectory& traj, const ResidualOptions& opts) {
    if (opts.stride < 1) throw std::invalid_argument("stride must be at least 1");
    if (opts.time_points != 3 && opts.time_points != 5) throw std::invalid_argument("time_points must be 3 or 5");
    std::vector<const FlowState*> out;
    for (std::size_t k = 0; k < traj.states.size(); k += static_cast<std::size_t>(opts.stride))
        out.push_back(&traj.states[k]);
    if (out.size() < 3) throw std::invalid_argument("residuals need at least 3 stored time levels");
    if (static_cast<int>(out.size()) < opts.time_points)
        throw std::invalid_argument("fewer stored levels than time_points");
    const std::size_t m = out.front()->g.q.size();
    for (const auto* s : out)
        if (s->g.q.size() != m) throw std::invalid_argument("stored states do not share a grid");
    return out;
}

/// Time-derivative weights at level k over a window of the selected levels.
struct TimeStencil {
    std::size_t start = 0;
    std::vector<double> w;
};

TimeStencil time_stencil(const std::vector<const FlowState*>& levels, std::size_t k, int points) {
    const std::size_t p = static_cast<std::size_t>(points);
    const std::size_t half = p / 2;
    std::size_t start = k >= half ? k - half : 0;
    start = std::min(start, levels.size() - p);
    std::vector<double> t(p);
    for (std::size_t j = 0; j < p; ++j) t[j] = levels[start + j]->t;
    return {start, fornberg_weights(levels[k]->t, t, 1)[1]};
}

double frame_max(const std::vector<double>& rr, const std::vector<double>* sph, int n, double weight,
                 const std::vector<double>& x) {
    double m = 0.0;
    const std::size_t lo = x.size() >= 3 ? 1 : 0;
    const std::size_t hi = x.size() >= 3 ? x.size() - 1 : x.size();
    for (std::size_t i = lo; i < hi; ++i) {
        double v = rr[i] * rr[i];
        if (sph) v += n * (*sph)[i] * (*sph)[i];
        m = std::max(m, std::pow(x[i], -weight) * std::sqrt(v));
    }
    return m;
}

void require_flow_cross_section(const FlowTrajectory& traj, const CrossSection& cs) {
    if (cs.n != traj.n) throw std::invalid_argument("cross-section dimension does not match trajectory");
    if (cs.einstein_constant != Rational(cs.n - 1)) throw std::invalid_argument("cross-section must have Einstein constant n-1");
}

}  // namespace

ResidualSeries scalar_evolution_residual(const FlowTrajectory& traj, const ResidualOptions& opts) {
    const auto levels = select_levels(traj, opts);
    const int n = traj.n;
    std::vector<Curvature> curv;
    curv.reserve(levels.size());
    for (const auto* s : levels) curv.push_back(curvature(s->g, n));

    ResidualSeries out;
    out.n = n;
    out.weight = opts.weight;
    out.stride = opts.stride;
    out.time_points = opts.time_points;
    out.x = levels.front()->g.grid.x;
    const std::size_t m = out.x.size();
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const WarpedMetric& g = levels[k]->g;
        const Curvature& c = curv[k];
        const auto ts = time_stencil(levels, k, opts.time_points);
        const auto lap = scalar_laplacian(g, c.scal, n);
        const auto w = de_turck_field(g, traj.background, n);
        const auto dR = g.grid.diff->d1(c.scal);
        std::vector<double> res(m);
        for (std::size_t i = 0; i < m; ++i) {
            double dt = 0.0;
            for (std::size_t j = 0; j < ts.w.size(); ++j) dt += ts.w[j] * curv[ts.start + j].scal[i];
            const double rr = c.ric.t_rr[i];
            const double sph = c.ric.t_sph[i];
            res[i] = dt + lap[i] - w.wx[i] * dR[i] - 2.0 * (rr * rr + n * sph * sph);
        }
        out.times.push_back(levels[k]->t);
        out.steps.push_back(levels[k]->step);
        out.max_residual.push_back(frame_max(res, nullptr, n, opts.weight, out.x));
        out.rr.push_back(std::move(res));
    }
    return out;
}

ResidualSeries scalar_evolution_residual(const FlowTrajectory& traj, const CrossSection& cs,
                                         const ResidualOptions& opts) {
    require_flow_cross_section(traj, cs);
    return scalar_evolution_residual(traj, opts);
}

ResidualSeries ricci_evolution_residual(const FlowTrajectory& traj, const ResidualOptions& opts) {
    const auto levels = select_levels(traj, opts);
    const int n = traj.n;
    const std::size_t m = levels.front()->g.q.size();
    // Coordinate components: Ric_xx = q rr, Ric on F = phi^2 sph (times g_F).
    std::vector<Curvature> curv;
    std::vector<std::vector<double>> cxx;
    std::vector<std::vector<double>> cff;
    for (const auto* s : levels) {
        curv.push_back(curvature(s->g, n));
        std::vector<double> a(m), b(m);
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = s->g.q[i] * curv.back().ric.t_rr[i];
            b[i] = s->g.phi[i] * s->g.phi[i] * curv.back().ric.t_sph[i];
        }
        cxx.push_back(std::move(a));
        cff.push_back(std::move(b));
    }

    ResidualSeries out;
    out.n = n;
    out.weight = opts.weight;
    out.stride = opts.stride;
    out.time_points = opts.time_points;
    out.x = levels.front()->g.grid.x;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const WarpedMetric& g = levels[k]->g;
        const auto ts = time_stencil(levels, k, opts.time_points);
        const auto lap = lichnerowicz_diagonal(g, curv[k].ric, n);
        const auto w = de_turck_field(g, traj.background, n);
        const auto dwx = w.dwx.empty() ? g.grid.diff->d1(w.wx) : w.dwx;
        const auto dxx = g.grid.diff->d1(cxx[k]);
        const auto dff = g.grid.diff->d1(cff[k]);
        std::vector<double> rr(m), sph(m);
        for (std::size_t i = 0; i < m; ++i) {
            double dt_xx = 0.0, dt_ff = 0.0;
            for (std::size_t j = 0; j < ts.w.size(); ++j) {
                dt_xx += ts.w[j] * cxx[ts.start + j][i];
                dt_ff += ts.w[j] * cff[ts.start + j][i];
            }
            const double lie_xx = w.wx[i] * dxx[i] + 2.0 * cxx[k][i] * dwx[i];
            const double lie_ff = w.wx[i] * dff[i];
            rr[i] = (dt_xx - lie_xx) / g.q[i] + lap.t_rr[i];
            sph[i] = (dt_ff - lie_ff) / (g.phi[i] * g.phi[i]) + lap.t_sph[i];
        }
        out.times.push_back(levels[k]->t);
        out.steps.push_back(levels[k]->step);
        out.max_residual.push_back(frame_max(rr, &sph, n, opts.weight, out.x));
        out.rr.push_back(std::move(rr));
        out.sph.push_back(std::move(sph));
    }
    return out;
}

ResidualSeries ricci_evolution_residual(const FlowTrajectory& traj, const CrossSection& cs,
                                        const ResidualOptions& opts) {
    require_flow_cross_section(traj, cs);
    return ricci_evolution_residual(traj, opts);
}

ResidualSeries richardson(const ResidualSeries& fine, const ResidualSeries& coarse, int order) {
    if (coarse.stride != 2 * fine.stride) throw std::invalid_argument("coarse series must use twice the stride");
    if (fine.x != coarse.x) throw std::invalid_argument("series do not share a grid");
    const double f = std::pow(2.0, order);
    ResidualSeries out = fine;
    out.times.clear();
    out.steps.clear();
    out.rr.clear();
    out.sph.clear();
    out.max_residual.clear();
    const bool has_sph = !fine.sph.empty();
    for (std::size_t kc = 0; kc < coarse.steps.size(); ++kc) {
        const auto it = std::find(fine.steps.begin(), fine.steps.end(), coarse.steps[kc]);
        if (it == fine.steps.end()) continue;
        const std::size_t kf = static_cast<std::size_t>(it - fine.steps.begin());
        auto combine = [&](const std::vector<double>& a, const std::vector<double>& b) {
            std::vector<double> r(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) r[i] = (f * a[i] - b[i]) / (f - 1.0);
            return r;
        };
        out.times.push_back(fine.times[kf]);
        out.steps.push_back(fine.steps[kf]);
        out.rr.push_back(combine(fine.rr[kf], coarse.rr[kc]));
        if (has_sph) out.sph.push_back(combine(fine.sph[kf], coarse.sph[kc]));
        out.max_residual.push_back(
            frame_max(out.rr.back(), has_sph ? &out.sph.back() : nullptr, out.n, out.weight, out.x));
    }
    return out;
}

double trace_identity_defect(const WarpedMetric& g, int n) {
    const auto c = curvature(g, n);
    const auto tr = lichnerowicz_diagonal(g, c.ric, n).frame_trace(n);
    const auto lap = scalar_laplacian(g, c.scal, n);
    const auto [lo, hi] = inner_range(g.grid);
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(tr[i] - lap[i]));
    return m;
}

double observed_order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

MonitorSeries monitor_series(const FlowTrajectory& traj, double gamma_prime, double gamma_bar) {
    MonitorSeries out;
    for (const auto& s : traj.states) {
        const auto c = curvature(s.g, traj.n);
        const auto [lo, hi] = inner_range(s.g.grid);
        double rmin = std::numeric_limits<double>::infinity();
        std::size_t arg = lo;
        for (std::size_t i = lo; i < hi; ++i)
            if (c.scal[i] < rmin) {
                rmin = c.scal[i];
                arg = i;
            }
        out.times.push_back(s.t);
        out.R_min.push_back(rmin);
        out.argmin.push_back(arg);
        out.sup_w_ric.push_back(weighted_sup(c.ric.frame_norms(traj.n), gamma_prime - 2.0, s.g.grid));
        const auto w = de_turck_field(s.g, traj.background, traj.n);
        out.w_proxy.push_back(weighted_sup(w.wx, gamma_bar - 1.0, s.g.grid));
        out.gamma_hat.push_back(decay_exponent(s.g, traj.n));
    }
    return out;
}

PositivityVerdict r_min_tracker(const FlowTrajectory& traj) {
    PositivityVerdict v;
    v.series = monitor_series(traj, traj.config.gamma_prime, traj.config.gamma_bar);
    if (traj.states.empty()) return v;
    const auto c0 = curvature(traj.states.front().g, traj.n);
    const auto [lo, hi] = inner_range(traj.states.front().g.grid);
    double rmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i < hi; ++i) rmax = std::max(rmax, c0.scal[i]);
    v.tol_pos = std::max(1e-6 * rmax, 1e-12);
    v.initial_nonnegative = v.series.R_min.front() >= -v.tol_pos;
    bool ok = true;
    for (double r : v.series.R_min)
        if (!(r >= -v.tol_pos)) ok = false;
    v.preserved = v.initial_nonnegative && ok;
    for (std::size_t k = 1; k < v.series.times.size(); ++k) {
        const double dt = v.series.times[k] - v.series.times[k - 1];
        v.dR_min_dt.push_back(dt > 0.0 ? (v.series.R_min[k] - v.series.R_min[k - 1]) / dt : 0.0);
    }
    return v;
}

PositivityVerdict r_min_tracker(const FlowTrajectory& traj, const CrossSection& cs) {
    require_flow_cross_section(traj, cs);
    return r_min_tracker(traj);
}

RicciBoundVerdict ricci_weight_monitor(const FlowTrajectory& traj, double gamma_prime) {
    if (!(gamma_prime > 0.0)) throw std::invalid_argument("gamma_prime must be positive");
    RicciBoundVerdict v;
    v.series = monitor_series(traj, gamma_prime, traj.config.gamma_bar);
    if (v.series.sup_w_ric.empty()) return v;
    v.initial = v.series.sup_w_ric.front();
    for (double s : v.series.sup_w_ric) v.sup = std::max(v.sup, s);
    v.bounded = v.sup <= 2.0 * v.initial;
    return v;
}

DeTurckVerdict de_turck_monitor(const FlowTrajectory& traj, double gamma_bar) {
    DeTurckVerdict v;
    v.series = monitor_series(traj, traj.config.gamma_prime, gamma_bar);
    v.finite = true;
    for (double s : v.series.w_proxy) {
        if (!std::isfinite(s)) v.finite = false;
        v.sup = std::max(v.sup, s);
    }
    return v;
}

}  // namespace conicflow
