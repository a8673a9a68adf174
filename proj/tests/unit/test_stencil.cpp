#include "conicflow/stencil.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace conicflow;

TEST(Fornberg, ThreePointCentered) {
    const std::vector<double> x{-1.0, 0.0, 1.0};
    const auto w = fornberg_weights(0.0, x, 2);
    EXPECT_NEAR(w[1][0], -0.5, 1e-15);
    EXPECT_NEAR(w[1][1], 0.0, 1e-15);
    EXPECT_NEAR(w[1][2], 0.5, 1e-15);
    EXPECT_NEAR(w[2][0], 1.0, 1e-15);
    EXPECT_NEAR(w[2][1], -2.0, 1e-15);
    EXPECT_NEAR(w[2][2], 1.0, 1e-15);
}

TEST(Fornberg, ExactOnPolynomialsOfStencilDegree) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(5);
        double acc = 0.0;
        for (auto& v : x) v = (acc += 0.1 + u(rng));
        const double z = x[2] + 0.3 * (u(rng) - 0.5);
        const auto w = fornberg_weights(z, x, 2);
        for (int deg = 0; deg <= 4; ++deg) {
            double d1 = 0, d2 = 0;
            for (int j = 0; j < 5; ++j) {
                d1 += w[1][j] * std::pow(x[j], deg);
                d2 += w[2][j] * std::pow(x[j], deg);
            }
            const double e1 = deg >= 1 ? deg * std::pow(z, deg - 1) : 0.0;
            const double e2 = deg >= 2 ? deg * (deg - 1) * std::pow(z, deg - 2) : 0.0;
            EXPECT_NEAR(d1, e1, 1e-9 * (1 + std::abs(e1)));
            EXPECT_NEAR(d2, e2, 1e-8 * (1 + std::abs(e2)));
        }
    }
}

namespace {

std::vector<double> graded(int N, double p) {
    std::vector<double> x(N + 1);
    for (int i = 0; i <= N; ++i) x[i] = 0.1 + 1.9 * std::pow(double(i) / N, p);
    return x;
}

double max_error(int N, int order, int derivative) {
    // p = 2 keeps the node map smooth, so the nonuniform stencils retain full order.
    const Differentiator d(graded(N, 2.0), order);
    std::vector<double> f;
    for (double x : d.nodes()) f.push_back(std::sin(2 * x));
    const auto df = derivative == 1 ? d.d1(f) : d.d2(f);
    double e = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = d.nodes()[i];
        const double exact = derivative == 1 ? 2 * std::cos(2 * x) : -4 * std::sin(2 * x);
        e = std::max(e, std::abs(df[i] - exact));
    }
    return e;
}

}  // namespace

TEST(Differentiator, ConvergenceOrderOnGradedGrid) {
    for (int order : {2, 4}) {
        for (int der : {1, 2}) {
            const double e1 = max_error(40, order, der);
            const double e2 = max_error(80, order, der);
            EXPECT_GT(std::log2(e1 / e2), order - 0.3) << "order " << order << " derivative " << der;
        }
    }
}

TEST(Differentiator, RejectsBadInput) {
    EXPECT_THROW(Differentiator({0.0, 1.0, 2.0, 3.0}, 4), std::invalid_argument);
    EXPECT_THROW(Differentiator({0.0, 1.0, 1.0, 3.0, 4.0}, 2), std::invalid_argument);
    EXPECT_THROW(Differentiator({0.0, 1.0, 2.0, 3.0, 4.0}, 3), std::invalid_argument);
}

TEST(Differentiator, ExactForLinearFunctions) {
    const Differentiator d(graded(30, 2.0), 4);
    std::vector<double> f;
    for (double x : d.nodes()) f.push_back(3 * x - 1);
    for (double v : d.d1(f)) EXPECT_NEAR(v, 3.0, 1e-10);
    for (double v : d.d2(f)) EXPECT_NEAR(v, 0.0, 1e-7);
}
