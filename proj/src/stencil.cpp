#include "conicflow/stencil.hpp"

#include <stdexcept>

namespace conicflow {

std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> x, int m) {
    const int n = static_cast<int>(x.size()) - 1;
    if (n < 0 || m < 0) throw std::invalid_argument("fornberg_weights: empty stencil");
    std::vector<std::vector<double>> c(static_cast<std::size_t>(m + 1), std::vector<double>(x.size(), 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

namespace {

std::vector<Differentiator::Row> build_rows(const std::vector<double>& x, int derivative, int centered_width,
                                            int boundary_width) {
    const int n = static_cast<int>(x.size());
    const int half = centered_width / 2;
    std::vector<Differentiator::Row> rows(x.size());
    for (int i = 0; i < n; ++i) {
        int start = i - half;
        int width = centered_width;
        if (start < 0 || start + width > n) {
            width = boundary_width;
            start = start < 0 ? 0 : n - width;
        }
        const auto w = fornberg_weights(x[i], std::span<const double>(x).subspan(start, width), derivative);
        rows[i] = {start, w[derivative]};
    }
    return rows;
}

}  // namespace

Differentiator::Differentiator(std::vector<double> nodes, int order) : nodes_(std::move(nodes)), order_(order) {
    if (order != 2 && order != 4) throw std::invalid_argument("stencil order must be 2 or 4");
    if (static_cast<int>(nodes_.size()) < order + 3)
        throw std::invalid_argument("grid too small for stencil order " + std::to_string(order));
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (!(nodes_[i] > nodes_[i - 1])) throw std::invalid_argument("grid nodes must be strictly increasing");
    d1_ = build_rows(nodes_, 1, order + 1, order + 2);
    d2_ = build_rows(nodes_, 2, order + 1, order + 3);
}

std::vector<double> Differentiator::apply(const std::vector<Row>& rows, std::span<const double> f) const {
    if (f.size() != nodes_.size()) throw std::invalid_argument("field size does not match grid");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double acc = 0.0;
        const auto& r = rows[i];
        for (std::size_t j = 0; j < r.weights.size(); ++j) acc += r.weights[j] * f[r.start + j];
        out[i] = acc;
    }
    return out;
}

std::vector<double> Differentiator::d1(std::span<const double> f) const { return apply(d1_, f); }

std::vector<double> Differentiator::d2(std::span<const double> f) const { return apply(d2_, f); }

}  // namespace conicflow
