#pragma once

#include <functional>
#include <string>
#include <vector>

/// Brute-force tensor calculus on an explicit coordinate chart. Everything is
/// computed from the metric components alone by central finite differences,
/// so it shares no formulas with the closed-form radial geometry.
namespace oracle {

using Point = std::vector<double>;
using Vec = std::vector<double>;

/// Dense square matrix, row-major.
struct Mat {
    int dim = 0;
    std::vector<double> a;

    Mat() = default;
    explicit Mat(int d) : dim(d), a(static_cast<std::size_t>(d * d), 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i * dim + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i * dim + j)]; }
};

/// Gamma[k][i][j] = Gamma^k_ij.
using Christoffel = std::vector<std::vector<std::vector<double>>>;
/// Riemann[l][i][j][k] = R^l_ijk.
using Riemann = std::vector<Christoffel>;

using MetricField = std::function<Mat(const Point&)>;
using TensorField = std::function<Mat(const Point&)>;
using VectorField = std::function<Vec(const Point&)>;
using Radial = std::function<double(double)>;

Mat inverse(const Mat& m);

class ChartOracle {
public:
    /// `h` is the finite-difference step used at every nesting level; the
    /// stencils are sixth-order central.
    explicit ChartOracle(MetricField metric, double h = 1e-2);

    int dim(const Point& z) const;
    Mat metric(const Point& z) const { return g_(z); }
    Christoffel christoffel(const Point& z) const;
    /// R^l_ijk as riemann[l][i][j][k] with R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik.
    Riemann riemann(const Point& z) const;
    /// R_jk = R^i_ijk.
    Mat ricci(const Point& z) const;
    double scalar(const Point& z) const;

    /// Covariant derivative nabla_a T_ij as cov[a] (a matrix in i, j).
    std::vector<Mat> covariant_derivative(const TensorField& t, const Point& z) const;
    /// Positive rough Laplacian -g^{ab} nabla_a nabla_b T.
    Mat rough_laplacian(const TensorField& t, const Point& z) const;
    /// Delta T - 2 g^{pq} R^r_{qij} T_rp + Ric o T + T o Ric.
    Mat lichnerowicz(const TensorField& t, const Point& z) const;
    /// Positive Laplace-Beltrami -g^{ab}(d_a d_b f - G^c_ab d_c f).
    double scalar_laplacian(const std::function<double(const Point&)>& f, const Point& z) const;
    /// nabla_i W_j + nabla_j W_i for a contravariant field W.
    Mat lie_derivative(const VectorField& w, const Point& z) const;
    /// W^k = g^{ij}(Gamma^k_ij(g) - Gamma^k_ij(h)).
    Vec de_turck(const ChartOracle& background, const Point& z) const;

    /// Sixth-order central derivative of a scalar function along coordinate `axis`.
    double partial(const std::function<double(const Point&)>& f, const Point& z, int axis) const;

private:
    MetricField g_;
    double h_;
};

/// q(x) dx^2 + phi(x)^2 g_{S^n} on the chart (x, theta_1..theta_n) with the
/// nested-sine round metric.
MetricField warped_metric(int n, Radial q, Radial phi);

/// T = t_rr q dx^2 + t_sph phi^2 g_{S^n}: frame components t_rr, t_sph.
TensorField diagonal_tensor(int n, Radial q, Radial phi, Radial t_rr, Radial t_sph);

/// Radial field W = wx(x) d/dx.
VectorField radial_field(int n, Radial wx);

/// A chart point at radius x with angles away from the coordinate poles.
Point chart_point(int n, double x);

/// Orthonormal frame components of a covariant diagonal tensor at a chart
/// point: (T_xx / q, T_11 / g_11) where index 1 is the first angle.
struct FrameComponents {
    double rr = 0.0;
    double sph = 0.0;
};
FrameComponents frame_components(const Mat& t, const Mat& g);

struct SelftestCase {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Known closed-form cases: round sphere curvature, flat cone, homothety
/// generator, Lichnerowicz of the metric.
std::vector<SelftestCase> run_selftest();

}  // namespace oracle
