#include "conicflow/polynomial.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace conicflow;

TEST(Polynomial, ArithmeticAndEvaluation) {
    const Polynomial p{Rational(-1), Rational(0), Rational(1)};  // x^2 - 1
    const Polynomial q = Polynomial::linear_factor(1) * Polynomial::linear_factor(-1);
    EXPECT_EQ(p, q);
    EXPECT_EQ(p(Rational(3)), Rational(8));
    EXPECT_DOUBLE_EQ(p.evaluate(0.5), -0.75);
    EXPECT_EQ(p.derivative(), (Polynomial{Rational(0), Rational(2)}));
    EXPECT_TRUE((p - q).is_zero());
    EXPECT_EQ(p.degree(), 2);
}

TEST(Polynomial, RemainderOfDivision) {
    const Polynomial p = Polynomial::linear_factor(2) * Polynomial::linear_factor(5) + Polynomial::constant(3);
    EXPECT_EQ(p.remainder(Polynomial::linear_factor(2)), Polynomial::constant(3));
}

TEST(Polynomial, SturmCountsDistinctRoots) {
    const Polynomial p = Polynomial::linear_factor(-2) * Polynomial::linear_factor(1) * Polynomial::linear_factor(1) *
                         Polynomial::linear_factor(4);
    const auto chain = sturm_chain(p);
    EXPECT_EQ(count_real_roots(chain, -10, 10), 3);
    EXPECT_EQ(count_real_roots(chain, 0, 3), 1);
    EXPECT_EQ(count_real_roots(chain, 1, 4), 1);  // (1, 4] contains 4 only
}

TEST(Polynomial, CauchyBoundEnclosesRoots) {
    const Polynomial p = Polynomial::linear_factor(-30) * Polynomial::linear_factor(7);
    EXPECT_GT(cauchy_root_bound(p), 30);
}

TEST(Polynomial, LargestRootOfRandomProducts) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-200, 200);
    std::uniform_int_distribution<int> den(1, 9);
    for (int trial = 0; trial < 50; ++trial) {
        Polynomial p = Polynomial::constant(1);
        Rational largest(-1000000);
        for (int k = 0; k < 3; ++k) {
            const Rational r(num(rng), den(rng));
            largest = std::max(largest, r);
            p = p * Polynomial::linear_factor(r);
        }
        const auto root = largest_real_root(p);
        ASSERT_TRUE(root.has_value());
        EXPECT_LE(root->lo, largest);
        EXPECT_GE(root->hi, largest);
        EXPECT_LT(root->width(), Rational(1, 1000000000));
    }
}

TEST(Polynomial, LargestRootIrrationalAndAbsent) {
    const Polynomial p{Rational(-2), Rational(0), Rational(1)};
    const auto root = largest_real_root(p);
    ASSERT_TRUE(root);
    EXPECT_FALSE(root->exact);
    EXPECT_LT(root->lo * root->lo, 2);
    EXPECT_GT(root->hi * root->hi, 2);
    EXPECT_FALSE(largest_real_root(Polynomial{Rational(1), Rational(0), Rational(1)}).has_value());
}
