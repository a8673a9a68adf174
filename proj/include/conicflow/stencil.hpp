#pragma once

#include <span>
#include <vector>

namespace conicflow {

/// Finite-difference weights at `z` on arbitrary distinct nodes (Fornberg's
/// recursion). Result[k][j] weights node j for the k-th derivative, k <= max_derivative.
std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> nodes, int max_derivative);

/// First and second derivatives on a fixed nonuniform grid. Interior rows are
/// centered with order+1 points; rows near the ends are one-sided and one
/// point wider than their interior counterpart.
class Differentiator {
public:
    /// `order` is 2 or 4. Needs at least order+3 nodes.
    Differentiator(std::vector<double> nodes, int order);

    int order() const { return order_; }
    const std::vector<double>& nodes() const { return nodes_; }

    std::vector<double> d1(std::span<const double> f) const;
    std::vector<double> d2(std::span<const double> f) const;

    struct Row {
        int start = 0;
        std::vector<double> weights;
    };
    const Row& d1_row(int i) const { return d1_[static_cast<std::size_t>(i)]; }
    const Row& d2_row(int i) const { return d2_[static_cast<std::size_t>(i)]; }

private:
    std::vector<double> apply(const std::vector<Row>& rows, std::span<const double> f) const;

    std::vector<double> nodes_;
    int order_;
    std::vector<Row> d1_;
    std::vector<Row> d2_;
};

}  // namespace conicflow
