#include "chart_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace oracle {

namespace {

constexpr int kOffsets[6] = {-3, -2, -1, 1, 2, 3};
constexpr double kWeights[6] = {-1.0, 9.0, -45.0, 45.0, -9.0, 1.0};
constexpr double kDenominator = 60.0;

Point shifted(const Point& z, int axis, double delta) {
    Point p = z;
    p[static_cast<std::size_t>(axis)] += delta;
    return p;
}

Mat partial_mat(const std::function<Mat(const Point&)>& f, const Point& z, int axis, double h) {
    Mat out;
    for (int s = 0; s < 6; ++s) {
        const Mat v = f(shifted(z, axis, kOffsets[s] * h));
        if (out.dim == 0) out = Mat(v.dim);
        for (std::size_t k = 0; k < v.a.size(); ++k) out.a[k] += kWeights[s] * v.a[k];
    }
    for (double& v : out.a) v /= kDenominator * h;
    return out;
}

Christoffel zero_christoffel(int m) {
    return Christoffel(static_cast<std::size_t>(m),
                       std::vector<std::vector<double>>(static_cast<std::size_t>(m), std::vector<double>(m, 0.0)));
}

}  // namespace

Mat inverse(const Mat& m) {
    const int d = m.dim;
    Mat a = m;
    Mat inv(d);
    for (int i = 0; i < d; ++i) inv(i, i) = 1.0;
    for (int col = 0; col < d; ++col) {
        int pivot = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == 0.0) throw std::runtime_error("singular metric in oracle");
        if (pivot != col)
            for (int k = 0; k < d; ++k) {
                std::swap(a(pivot, k), a(col, k));
                std::swap(inv(pivot, k), inv(col, k));
            }
        const double p = a(col, col);
        for (int k = 0; k < d; ++k) {
            a(col, k) /= p;
            inv(col, k) /= p;
        }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (int k = 0; k < d; ++k) {
                a(r, k) -= f * a(col, k);
                inv(r, k) -= f * inv(col, k);
            }
        }
    }
    return inv;
}

ChartOracle::ChartOracle(MetricField metric, double h) : g_(std::move(metric)), h_(h) {}

int ChartOracle::dim(const Point& z) const { return static_cast<int>(z.size()); }

double ChartOracle::partial(const std::function<double(const Point&)>& f, const Point& z, int axis) const {
    double acc = 0.0;
    for (int s = 0; s < 6; ++s) acc += kWeights[s] * f(shifted(z, axis, kOffsets[s] * h_));
    return acc / (kDenominator * h_);
}

Christoffel ChartOracle::christoffel(const Point& z) const {
    const int m = dim(z);
    const Mat ginv = inverse(g_(z));
    std::vector<Mat> dg;
    for (int l = 0; l < m; ++l) dg.push_back(partial_mat(g_, z, l, h_));
    Christoffel G = zero_christoffel(m);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double acc = 0.0;
                for (int l = 0; l < m; ++l) acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                G[k][i][j] = 0.5 * acc;
            }
    return G;
}

Riemann ChartOracle::riemann(const Point& z) const {
    const int m = dim(z);
    const auto G = christoffel(z);
    // dG[a][l][j][k] = d_a Gamma^l_jk
    std::vector<Christoffel> dG(static_cast<std::size_t>(m), zero_christoffel(m));
    for (int a = 0; a < m; ++a)
        for (int s = 0; s < 6; ++s) {
            const auto Gs = christoffel(shifted(z, a, kOffsets[s] * h_));
            for (int l = 0; l < m; ++l)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k) dG[a][l][j][k] += kWeights[s] * Gs[l][j][k] / (kDenominator * h_);
        }
    Riemann R(static_cast<std::size_t>(m), zero_christoffel(m));
    for (int l = 0; l < m; ++l)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k) {
                    double acc = dG[i][l][j][k] - dG[j][l][i][k];
                    for (int p = 0; p < m; ++p) acc += G[l][i][p] * G[p][j][k] - G[l][j][p] * G[p][i][k];
                    R[l][i][j][k] = acc;
                }
    return R;
}

Mat ChartOracle::ricci(const Point& z) const {
    const int m = dim(z);
    const auto R = riemann(z);
    Mat ric(m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
            double acc = 0.0;
            for (int i = 0; i < m; ++i) acc += R[i][i][j][k];
            ric(j, k) = acc;
        }
    return ric;
}

double ChartOracle::scalar(const Point& z) const {
    const Mat ginv = inverse(g_(z));
    const Mat ric = ricci(z);
    double acc = 0.0;
    for (int i = 0; i < ric.dim; ++i)
        for (int j = 0; j < ric.dim; ++j) acc += ginv(i, j) * ric(i, j);
    return acc;
}

std::vector<Mat> ChartOracle::covariant_derivative(const TensorField& t, const Point& z) const {
    const int m = dim(z);
    const auto G = christoffel(z);
    const Mat T = t(z);
    std::vector<Mat> out;
    for (int a = 0; a < m; ++a) {
        Mat d = partial_mat(t, z, a, h_);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double acc = 0.0;
                for (int c = 0; c < m; ++c) acc += G[c][a][i] * T(c, j) + G[c][a][j] * T(i, c);
                d(i, j) -= acc;
            }
        out.push_back(d);
    }
    return out;
}

Mat ChartOracle::rough_laplacian(const TensorField& t, const Point& z) const {
    const int m = dim(z);
    const auto G = christoffel(z);
    const Mat ginv = inverse(g_(z));
    const auto cov = covariant_derivative(t, z);
    Mat out(m);
    for (int a = 0; a < m; ++a) {
        // d_a (nabla_b T_ij) for every b at once.
        std::vector<Mat> dcov(static_cast<std::size_t>(m), Mat(m));
        for (int s = 0; s < 6; ++s) {
            const auto cs = covariant_derivative(t, shifted(z, a, kOffsets[s] * h_));
            for (int b = 0; b < m; ++b)
                for (std::size_t k = 0; k < cs[b].a.size(); ++k)
                    dcov[b].a[k] += kWeights[s] * cs[b].a[k] / (kDenominator * h_);
        }
        for (int b = 0; b < m; ++b) {
            if (ginv(a, b) == 0.0) continue;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    double second = dcov[b](i, j);
                    for (int c = 0; c < m; ++c)
                        second -= G[c][a][b] * cov[c](i, j) + G[c][a][i] * cov[b](c, j) + G[c][a][j] * cov[b](i, c);
                    out(i, j) -= ginv(a, b) * second;
                }
        }
    }
    return out;
}

Mat ChartOracle::lichnerowicz(const TensorField& t, const Point& z) const {
    const int m = dim(z);
    const Mat ginv = inverse(g_(z));
    const auto R = riemann(z);
    Mat ric(m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < m; ++i) ric(j, k) += R[i][i][j][k];
    const Mat T = t(z);
    Mat out = rough_laplacian(t, z);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double curv = 0.0;
            for (int p = 0; p < m; ++p)
                for (int q = 0; q < m; ++q) {
                    if (ginv(p, q) == 0.0) continue;
                    for (int r = 0; r < m; ++r) curv += ginv(p, q) * R[r][q][i][j] * T(r, p);
                }
            double composed = 0.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) composed += ric(i, a) * ginv(a, b) * T(b, j) + T(i, a) * ginv(a, b) * ric(b, j);
            out(i, j) += -2.0 * curv + composed;
        }
    return out;
}

double ChartOracle::scalar_laplacian(const std::function<double(const Point&)>& f, const Point& z) const {
    const int m = dim(z);
    const auto G = christoffel(z);
    const Mat ginv = inverse(g_(z));
    Vec df(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) df[c] = partial(f, z, c);
    double acc = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (ginv(a, b) == 0.0) continue;
            const double dab = partial([&](const Point& p) { return partial(f, p, b); }, z, a);
            double conn = 0.0;
            for (int c = 0; c < m; ++c) conn += G[c][a][b] * df[c];
            acc += ginv(a, b) * (dab - conn);
        }
    return -acc;
}

Mat ChartOracle::lie_derivative(const VectorField& w, const Point& z) const {
    const int m = dim(z);
    const auto G = christoffel(z);
    auto lowered = [&](const Point& p) {
        const Mat g = g_(p);
        const Vec v = w(p);
        Mat out(m);
        // Stored as a matrix with a single meaningful row so partial_mat can be reused.
        for (int j = 0; j < m; ++j) {
            double acc = 0.0;
            for (int k = 0; k < m; ++k) acc += g(j, k) * v[k];
            out(0, j) = acc;
        }
        return out;
    };
    const Mat wl = lowered(z);
    std::vector<Mat> dw;
    for (int i = 0; i < m; ++i) dw.push_back(partial_mat(lowered, z, i, h_));
    Mat out(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double nij = dw[i](0, j);
            double nji = dw[j](0, i);
            for (int c = 0; c < m; ++c) {
                nij -= G[c][i][j] * wl(0, c);
                nji -= G[c][j][i] * wl(0, c);
            }
            out(i, j) = nij + nji;
        }
    return out;
}

Vec ChartOracle::de_turck(const ChartOracle& background, const Point& z) const {
    const int m = dim(z);
    const auto G = christoffel(z);
    const auto H = background.christoffel(z);
    const Mat ginv = inverse(g_(z));
    Vec w(static_cast<std::size_t>(m), 0.0);
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) w[k] += ginv(i, j) * (G[k][i][j] - H[k][i][j]);
    return w;
}

namespace {

/// Coefficient of d theta_k^2 in the nested-sine round metric.
double sphere_coefficient(const Point& z, int k) {
    double c = 1.0;
    for (int j = 1; j < k; ++j) {
        const double s = std::sin(z[static_cast<std::size_t>(j)]);
        c *= s * s;
    }
    return c;
}

}  // namespace

MetricField warped_metric(int n, Radial q, Radial phi) {
    return [n, q = std::move(q), phi = std::move(phi)](const Point& z) {
        Mat g(n + 1);
        const double p = phi(z[0]);
        g(0, 0) = q(z[0]);
        for (int k = 1; k <= n; ++k) g(k, k) = p * p * sphere_coefficient(z, k);
        return g;
    };
}

TensorField diagonal_tensor(int n, Radial q, Radial phi, Radial t_rr, Radial t_sph) {
    return [n, q = std::move(q), phi = std::move(phi), t_rr = std::move(t_rr), t_sph = std::move(t_sph)](const Point& z) {
        Mat t(n + 1);
        const double x = z[0];
        const double p = phi(x);
        t(0, 0) = t_rr(x) * q(x);
        for (int k = 1; k <= n; ++k) t(k, k) = t_sph(x) * p * p * sphere_coefficient(z, k);
        return t;
    };
}

VectorField radial_field(int n, Radial wx) {
    return [n, wx = std::move(wx)](const Point& z) {
        Vec v(static_cast<std::size_t>(n + 1), 0.0);
        v[0] = wx(z[0]);
        return v;
    };
}

Point chart_point(int n, double x) {
    Point z(static_cast<std::size_t>(n + 1), 1.1);
    z[0] = x;
    return z;
}

FrameComponents frame_components(const Mat& t, const Mat& g) { return {t(0, 0) / g(0, 0), t(1, 1) / g(1, 1)}; }

std::vector<SelftestCase> run_selftest() {
    std::vector<SelftestCase> cases;
    auto add = [&](std::string name, double value, double expected, double tol) {
        cases.push_back({std::move(name), value, expected, tol, std::abs(value - expected) <= tol});
    };
    const int n = 3;
    auto one = [](double) { return 1.0; };
    auto identity = [](double x) { return x; };

    const ChartOracle sphere(warped_metric(n, one, [](double x) { return std::sin(x); }));
    const Point zs = chart_point(n, 1.0);
    add("round S^4 scalar curvature", sphere.scalar(zs), n * (n + 1.0), 1e-7);
    const auto fs = frame_components(sphere.ricci(zs), sphere.metric(zs));
    add("round S^4 radial Ricci", fs.rr, n, 1e-7);
    add("round S^4 spherical Ricci", fs.sph, n, 1e-7);

    const ChartOracle cone(warped_metric(n, one, identity));
    const Point zc = chart_point(n, 0.5);
    const auto fc = frame_components(cone.ricci(zc), cone.metric(zc));
    add("exact cone radial Ricci", fc.rr, 0.0, 1e-7);
    add("exact cone spherical Ricci", fc.sph, 0.0, 1e-7);

    const double c = 0.8;
    const ChartOracle wide(warped_metric(n, one, [c](double x) { return c * x; }));
    const auto fw = frame_components(wide.ricci(zc), wide.metric(zc));
    add("cone angle c=0.8 spherical Ricci", fw.sph, (n - 1) * (1 - c * c) / (c * c * 0.25), 1e-6);

    const auto lie = frame_components(cone.lie_derivative(radial_field(n, identity), zc), cone.metric(zc));
    add("Euler field generates 2g (radial)", lie.rr, 2.0, 1e-8);
    add("Euler field generates 2g (spherical)", lie.sph, 2.0, 1e-8);

    const auto lg = frame_components(
        sphere.lichnerowicz(diagonal_tensor(n, one, [](double x) { return std::sin(x); }, one, one), zs), sphere.metric(zs));
    add("Lichnerowicz of the metric (radial)", lg.rr, 0.0, 1e-6);
    add("Lichnerowicz of the metric (spherical)", lg.sph, 0.0, 1e-6);

    const auto w = wide.de_turck(cone, zc);
    add("de Turck field of c x against the cone", w[0], (n / 0.5) * (1.0 / (c * c) - 1.0), 1e-7);
    return cases;
}

}  // namespace oracle
