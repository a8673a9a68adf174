#include "conicflow/rational.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace conicflow;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("16/5"), Rational(16, 5));
    EXPECT_EQ(parse_rational("2.125"), Rational(17, 8));
    EXPECT_EQ(parse_rational(" 47/15 "), Rational(47, 15));
}

TEST(Rational, RejectsMalformedText) {
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
}

TEST(Rational, PrintsLowestTerms) {
    EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
    EXPECT_EQ(to_string(Rational(-10, 5)), "-2");
    EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Rational, ExactRationalOfDoubleRoundTrips) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        const double x = dist(rng);
        EXPECT_EQ(to_double(exact_rational(x)), x);
    }
    EXPECT_EQ(exact_rational(0.5), Rational(1, 2));
    EXPECT_EQ(exact_rational(0.1) == Rational(1, 10), false);
}

TEST(Rational, ListsRoundTrip) {
    const auto v = parse_rational_list("0, 3, 8/3,15");
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[2], Rational(8, 3));
    EXPECT_EQ(parse_rational_list(to_string(v)), v);
    EXPECT_TRUE(parse_rational_list("").empty());
}
