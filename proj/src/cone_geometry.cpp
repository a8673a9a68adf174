#include "conicflow/cone_geometry.hpp"

#include "conicflow/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace conicflow {

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes, int stencil_order, double grading) {
    if (nodes.empty() || !(nodes.front() > 0.0)) throw std::invalid_argument("grid must start at x_min > 0");
    RadialGrid g;
    g.diff = std::make_shared<const Differentiator>(nodes, stencil_order);
    g.x = std::move(nodes);
    g.grading = grading;
    return g;
}

bool RadialGrid::same_nodes(const RadialGrid& other) const { return diff == other.diff || x == other.x; }

void WarpedMetric::check() const {
    if (q.size() != grid.size() || phi.size() != grid.size())
        throw std::invalid_argument("metric profile size does not match grid");
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!(q[i] > 0.0) || !(phi[i] > 0.0))
            throw std::invalid_argument("metric not positive at x = " + std::to_string(grid.x[i]));
    }
}

WarpedMetric exact_cone(const RadialGrid& grid) { return WarpedMetric{grid, std::vector<double>(grid.size(), 1.0), grid.x}; }

double DiagonalTwoTensor::frame_norm(std::size_t i, int n) const {
    return std::sqrt(t_rr[i] * t_rr[i] + n * t_sph[i] * t_sph[i]);
}

std::vector<double> DiagonalTwoTensor::frame_norms(int n) const {
    std::vector<double> out(t_rr.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = frame_norm(i, n);
    return out;
}

std::vector<double> DiagonalTwoTensor::frame_trace(int n) const {
    std::vector<double> out(t_rr.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = t_rr[i] + n * t_sph[i];
    return out;
}

namespace {

/// Derivatives of q and phi taken relative to the exact cone (q = 1, phi = x),
/// which the stencils differentiate exactly. This keeps near-conical metrics
/// free of cancellation roundoff and makes the cone itself exactly flat.
struct ProfileDerivatives {
    std::vector<double> dq, ddq, dphi, ddphi;
};

ProfileDerivatives profile_derivatives(const WarpedMetric& g) {
    const auto& d = *g.grid.diff;
    const std::size_t m = g.q.size();
    std::vector<double> dq0(m), dp0(m);
    for (std::size_t i = 0; i < m; ++i) {
        dq0[i] = g.q[i] - 1.0;
        dp0[i] = g.phi[i] - g.grid.x[i];
    }
    ProfileDerivatives p{d.d1(dq0), d.d2(dq0), d.d1(dp0), d.d2(dp0)};
    for (double& v : p.dphi) v += 1.0;
    return p;
}

}  // namespace

ArclengthDerivatives arclength_derivatives(const WarpedMetric& g) {
    const auto pd = profile_derivatives(g);
    const auto& dphi = pd.dphi;
    const auto& ddphi = pd.ddphi;
    const auto& dq = pd.dq;
    ArclengthDerivatives a;
    a.phi_s.resize(g.q.size());
    a.phi_ss.resize(g.q.size());
    for (std::size_t i = 0; i < g.q.size(); ++i) {
        const double q = g.q[i];
        a.phi_s[i] = dphi[i] / std::sqrt(q);
        a.phi_ss[i] = ddphi[i] / q - dphi[i] * dq[i] / (2.0 * q * q);
    }
    return a;
}

Curvature curvature(const WarpedMetric& g, int n) {
    g.check();
    const auto a = arclength_derivatives(g);
    const std::size_t m = g.q.size();
    Curvature c;
    c.ric.t_rr.resize(m);
    c.ric.t_sph.resize(m);
    c.scal.resize(m);
    c.k_rad.resize(m);
    c.k_sph.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double phi = g.phi[i];
        c.k_rad[i] = -a.phi_ss[i] / phi;
        c.k_sph[i] = (1.0 - a.phi_s[i] * a.phi_s[i]) / (phi * phi);
        c.ric.t_rr[i] = n * c.k_rad[i];
        c.ric.t_sph[i] = c.k_rad[i] + (n - 1) * c.k_sph[i];
        c.scal[i] = 2.0 * n * c.k_rad[i] + n * (n - 1.0) * c.k_sph[i];
    }
    return c;
}

namespace {

void require_einstein(const CrossSection& cs) {
    if (cs.einstein_constant != Rational(cs.n - 1))
        throw std::invalid_argument("cross-section must have Einstein constant n-1");
}

void require_same_grid(const RadialGrid& a, const RadialGrid& b) {
    if (!a.same_nodes(b)) throw std::invalid_argument("metrics live on different grids");
}

}  // namespace

Curvature curvature(const WarpedMetric& g, const CrossSection& cs) {
    require_einstein(cs);
    return curvature(g, cs.n);
}

Christoffels christoffels(const WarpedMetric& g) {
    g.check();
    const auto pd = profile_derivatives(g);
    const auto& dq = pd.dq;
    const auto& dphi = pd.dphi;
    Christoffels c;
    const std::size_t m = g.q.size();
    c.Gxxx.resize(m);
    c.Gx_sph.resize(m);
    c.Gsph_x.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        c.Gxxx[i] = dq[i] / (2.0 * g.q[i]);
        c.Gx_sph[i] = -g.phi[i] * dphi[i] / g.q[i];
        c.Gsph_x[i] = dphi[i] / g.phi[i];
    }
    return c;
}

RadialVectorField de_turck_field(const WarpedMetric& g, const WarpedMetric& h, int n) {
    g.check();
    h.check();
    require_same_grid(g.grid, h.grid);
    const auto pg = profile_derivatives(g);
    const auto ph_d = profile_derivatives(h);
    const auto &dq = pg.dq, &ddq = pg.ddq, &dp = pg.dphi, &ddp = pg.ddphi;
    const auto &dqh = ph_d.dq, &ddqh = ph_d.ddq, &dph = ph_d.dphi, &ddph = ph_d.ddphi;
    const std::size_t m = g.q.size();
    RadialVectorField w;
    w.wx.resize(m);
    w.dwx.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double q = g.q[i], q1 = dq[i], q2 = ddq[i];
        const double p = g.phi[i], p1 = dp[i], p2 = ddp[i];
        const double qh = h.q[i], qh1 = dqh[i], qh2 = ddqh[i];
        const double ph = h.phi[i], ph1 = dph[i], ph2 = ddph[i];
        // W^x = A / (2q) - n B / phi^2 with A, B differences of g and h terms,
        // so W vanishes to the last bit when g = h.
        const double A = q1 / q - qh1 / qh;
        const double B = p * p1 / q - ph * ph1 / qh;
        const double A1 = (q2 / q - q1 * q1 / (q * q)) - (qh2 / qh - qh1 * qh1 / (qh * qh));
        const double B1 = ((p1 * p1 + p * p2) / q - p * p1 * q1 / (q * q)) - ((ph1 * ph1 + ph * ph2) / qh - ph * ph1 * qh1 / (qh * qh));
        w.wx[i] = A / (2 * q) - n * B / (p * p);
        w.dwx[i] = A1 / (2 * q) - A * q1 / (2 * q * q) - n * B1 / (p * p) + 2 * n * B * p1 / (p * p * p);
    }
    return w;
}

LieDerivative lie_derivative_radial(const RadialVectorField& w, const WarpedMetric& g) {
    g.check();
    if (w.wx.size() != g.q.size()) throw std::invalid_argument("vector field size does not match grid");
    const auto& d = *g.grid.diff;
    const auto pd = profile_derivatives(g);
    const auto& dq = pd.dq;
    const auto dw = w.dwx.empty() ? d.d1(w.wx) : w.dwx;
    LieDerivative l;
    l.xx.resize(g.q.size());
    l.sph.resize(g.q.size());
    for (std::size_t i = 0; i < g.q.size(); ++i) {
        l.xx[i] = w.wx[i] * dq[i] + 2.0 * g.q[i] * dw[i];
        l.sph[i] = w.wx[i] * 2.0 * g.phi[i] * pd.dphi[i];
    }
    return l;
}

std::vector<double> scalar_laplacian(const WarpedMetric& g, const std::vector<double>& f, int n) {
    g.check();
    const auto& d = *g.grid.diff;
    const auto df = d.d1(f);
    const auto ddf = d.d2(f);
    const auto pd = profile_derivatives(g);
    const auto& dq = pd.dq;
    const auto& dphi = pd.dphi;
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double q = g.q[i];
        out[i] = -(ddf[i] / q - df[i] * dq[i] / (2 * q * q) + n * dphi[i] * df[i] / (q * g.phi[i]));
    }
    return out;
}

DiagonalTwoTensor conformal_ricci(const WarpedMetric& g, const std::vector<double>& u, int n) {
    g.check();
    if (u.size() != g.q.size()) throw std::invalid_argument("conformal factor size does not match grid");
    std::vector<double> f(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(1.0 + u[i] > 0.0)) throw std::invalid_argument("conformal factor 1+u must be positive");
        f[i] = 0.5 * std::log1p(u[i]);
    }
    const auto c = curvature(g, n);
    const auto a = arclength_derivatives(g);
    const auto& d = *g.grid.diff;
    const auto df = d.d1(f);
    const auto ddf = d.d2(f);
    const auto dq = profile_derivatives(g).dq;
    const auto lap = scalar_laplacian(g, f, n);
    DiagonalTwoTensor r;
    r.t_rr.resize(u.size());
    r.t_sph.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double q = g.q[i];
        const double f_s = df[i] / std::sqrt(q);
        const double f_ss = ddf[i] / q - df[i] * dq[i] / (2 * q * q);
        const double trace_part = lap[i] - (n - 1) * f_s * f_s;
        r.t_rr[i] = c.ric.t_rr[i] - (n - 1) * (f_ss - f_s * f_s) + trace_part;
        r.t_sph[i] = c.ric.t_sph[i] - (n - 1) * (a.phi_s[i] / g.phi[i]) * f_s + trace_part;
    }
    return r;
}

DiagonalTwoTensor lichnerowicz_diagonal(const WarpedMetric& g, const DiagonalTwoTensor& t, int n) {
    g.check();
    const std::size_t m = g.q.size();
    if (t.t_rr.size() != m || t.t_sph.size() != m) throw std::invalid_argument("tensor size does not match grid");
    // T = f g + k N with N the unit radial projector.
    std::vector<double> f = t.t_sph;
    std::vector<double> k(m);
    for (std::size_t i = 0; i < m; ++i) k[i] = t.t_rr[i] - t.t_sph[i];
    const auto lap_f = scalar_laplacian(g, f, n);
    const auto lap_k = scalar_laplacian(g, k, n);
    const auto a = arclength_derivatives(g);
    DiagonalTwoTensor out;
    out.t_rr.resize(m);
    out.t_sph.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double phi = g.phi[i];
        const double sigma = a.phi_s[i] * a.phi_s[i] / (phi * phi) - a.phi_ss[i] / phi;
        out.t_rr[i] = lap_f[i] + lap_k[i] + 2.0 * n * sigma * k[i];
        out.t_sph[i] = lap_f[i] - 2.0 * sigma * k[i];
    }
    return out;
}

DiagonalTwoTensor lichnerowicz_diagonal(const WarpedMetric& g, const DiagonalTwoTensor& t, const CrossSection& cs) {
    require_einstein(cs);
    return lichnerowicz_diagonal(g, t, cs.n);
}

std::vector<double> perturbation_norm(const WarpedMetric& g, const WarpedMetric& gbar, int n) {
    require_same_grid(g.grid, gbar.grid);
    std::vector<double> out(g.q.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double a = (g.q[i] - gbar.q[i]) / gbar.q[i];
        const double pb2 = gbar.phi[i] * gbar.phi[i];
        const double b = (g.phi[i] * g.phi[i] - pb2) / pb2;
        out[i] = std::sqrt(a * a + n * b * b);
    }
    return out;
}

DecayEstimate perturbation_decay(const WarpedMetric& g, const WarpedMetric& gbar, int n) {
    const auto norm = perturbation_norm(g, gbar, n);
    DecayEstimate e;
    bool all_zero = true;
    for (double v : norm)
        if (v != 0.0) all_zero = false;
    if (all_zero) {
        e.exact = true;
        return e;
    }
    const std::size_t last = std::max<std::size_t>(norm.size() / 3, 3);
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 1; i <= last && i < norm.size(); ++i) {
        if (norm[i] == 0.0) continue;
        lx.push_back(std::log(g.grid.x[i]));
        ly.push_back(std::log(norm[i]));
    }
    e.points = static_cast<int>(lx.size());
    if (lx.size() < 3) throw std::invalid_argument("too few nonzero nodes for a decay fit");
    const double k = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    e.gamma_hat = sxy / sxx;
    const double intercept = my - e.gamma_hat * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (intercept + e.gamma_hat * lx[i]);
        sse += r * r;
    }
    e.residual = std::sqrt(sse / k);
    e.std_error = std::sqrt(sse / (k - 2.0) / sxx);
    return e;
}

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string metric_to_csv(const WarpedMetric& g) {
    std::string out = "x,q,phi\n";
    for (std::size_t i = 0; i < g.q.size(); ++i) out += g17(g.grid.x[i]) + "," + g17(g.q[i]) + "," + g17(g.phi[i]) + "\n";
    return out;
}

WarpedMetric metric_from_csv(const std::string& text, int stencil_order) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,q,phi", 0) != 0) throw ConfigError("metric CSV must start with header x,q,phi");
    std::vector<double> x, q, phi;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double a = 0, b = 0, c = 0;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &a, &b, &c, &tail) != 3)
            throw ConfigError("metric CSV line " + std::to_string(line_no) + ": expected three numbers");
        x.push_back(a);
        q.push_back(b);
        phi.push_back(c);
    }
    WarpedMetric g;
    try {
        g.grid = RadialGrid::from_nodes(std::move(x), stencil_order);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("metric CSV: ") + e.what());
    }
    g.q = std::move(q);
    g.phi = std::move(phi);
    try {
        g.check();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("metric CSV: ") + e.what());
    }
    return g;
}

std::string tensor_to_csv(const RadialGrid& grid, const DiagonalTwoTensor& t) {
    std::string out = "x,t_rr,t_sph\n";
    for (std::size_t i = 0; i < grid.size(); ++i) out += g17(grid.x[i]) + "," + g17(t.t_rr[i]) + "," + g17(t.t_sph[i]) + "\n";
    return out;
}

double decay_exponent(const WarpedMetric& g, int n) {
    try {
        const auto d = perturbation_decay(g, exact_cone(g.grid), n);
        return d.exact ? std::numeric_limits<double>::infinity() : d.gamma_hat;
    } catch (const std::invalid_argument&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace conicflow
