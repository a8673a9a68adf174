#include "conicflow/cross_section.hpp"
#include "conicflow/errors.hpp"

#include <gtest/gtest.h>

using namespace conicflow;

TEST(RoundSphere, LowestBands) {
    const auto s2 = make_round_sphere(2);
    ASSERT_GE(s2.scalar_spectrum.size(), 3u);
    EXPECT_EQ(s2.scalar_spectrum[0], 0);
    EXPECT_EQ(s2.scalar_spectrum[1], 2);
    EXPECT_EQ(s2.scalar_spectrum[2], 6);
    EXPECT_EQ(make_round_sphere(3).scalar_spectrum[1], 3);
    for (int n = 2; n <= 12; ++n) {
        const auto s = make_round_sphere(n);
        EXPECT_EQ(s.einstein_constant, Rational(n - 1));
        EXPECT_EQ(s.scalar_spectrum[2], Rational(2 * (n + 1)));
    }
    EXPECT_THROW(make_round_sphere(1), std::invalid_argument);
}

TEST(RoundSphere, ValidatesCleanly) {
    for (int n = 2; n <= 10; ++n) {
        const auto r = validate(make_round_sphere(n));
        EXPECT_TRUE(r.ok());
        EXPECT_TRUE(r.warnings.empty());
    }
}

TEST(Validate, FlagsUnsortedSpectrum) {
    auto cs = make_round_sphere(3);
    cs.scalar_spectrum = {Rational(0), Rational(3), Rational(2)};
    const auto r = validate(cs);
    ASSERT_FALSE(r.ok());
    bool found = false;
    for (const auto& e : r.errors) found = found || e.find("not ascending") != std::string::npos;
    EXPECT_TRUE(found);
}

TEST(Validate, WarnsBelowFirstEigenvalueBound) {
    auto cs = make_round_sphere(3);
    cs.scalar_spectrum = {Rational(0), Rational(1), Rational(3)};
    const auto r = validate(cs);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(Validate, FlagsNegativeAndStructuralErrors) {
    auto cs = make_round_sphere(3);
    cs.coclosed_oneform_spectrum = {Rational(-1), Rational(2)};
    EXPECT_FALSE(validate(cs).ok());
    cs = make_round_sphere(3);
    cs.scalar_spectrum[0] = 1;
    EXPECT_FALSE(validate(cs).ok());
    cs = make_round_sphere(3);
    cs.einstein_constant = 1;
    EXPECT_FALSE(validate(cs).ok());
}

TEST(CrossSectionFile, RoundTrip) {
    for (int n = 2; n <= 8; ++n) {
        const auto cs = make_round_sphere(n, 6);
        EXPECT_EQ(parse_cross_section(serialize_cross_section(cs)), cs);
    }
    CrossSection synthetic{"synthetic", 10, Rational(9), {Rational(0), Rational(60), Rational(121, 2)},
                           {Rational(15)}, {Rational(25)}, Rational(61)};
    EXPECT_EQ(parse_cross_section(serialize_cross_section(synthetic)), synthetic);
}

TEST(CrossSectionFile, StrictKeys) {
    EXPECT_THROW(parse_cross_section("n = 3\nscalar_spectrum = 0, 3\ncomplete_below = 9\ncolour = red\n"), ConfigError);
    EXPECT_THROW(parse_cross_section("scalar_spectrum = 0, 3\ncomplete_below = 9\n"), ConfigError);
    EXPECT_THROW(parse_cross_section("n = 3\nscalar_spectrum = 0, x\ncomplete_below = 9\n"), ConfigError);
    const auto cs = parse_cross_section("n = 3\nscalar_spectrum = 0, 3, 8\ncomplete_below = 9\n");
    EXPECT_EQ(cs.einstein_constant, 2);
    EXPECT_TRUE(cs.tt_einstein_spectrum.empty());
}

TEST(BuiltinTable, ValuesAsPrinted) {
    const auto e8 = find_row("E_8");
    ASSERT_TRUE(e8);
    EXPECT_EQ(e8->dim_listed, 496);
    EXPECT_EQ(e8->Lambda, 4);
    EXPECT_EQ(e8->Theta, Rational(47, 15));
    EXPECT_TRUE(e8->sts_verdict);

    const auto g2 = find_row("G_2");
    ASSERT_TRUE(g2);
    EXPECT_EQ(g2->dim_listed, 14);
    EXPECT_EQ(g2->Lambda, 2);
    EXPECT_EQ(g2->Theta, 2);
    EXPECT_FALSE(g2->sts_verdict);

    const auto f2 = find_row("F II");
    ASSERT_TRUE(f2);
    EXPECT_EQ(f2->dim_listed, 16);
    EXPECT_EQ(f2->Lambda, Rational(4, 3));
    EXPECT_EQ(f2->Theta, Rational(4, 3));
    EXPECT_FALSE(f2->sts_verdict);

    const auto e6 = find_row("E VI");
    ASSERT_TRUE(e6);
    EXPECT_EQ(e6->dim_listed, 64);
    EXPECT_EQ(e6->Lambda, Rational(28, 9));

    const auto e8g = find_row("E_6");
    ASSERT_TRUE(e8g);
    EXPECT_EQ(e8g->dim_listed, 156);
    EXPECT_EQ(e8g->Theta, Rational(17, 6));
}

TEST(BuiltinTable, ExactlyFourYesRows) {
    const auto& rows = builtin_table();
    EXPECT_EQ(rows.size(), 46u);
    std::vector<std::string> yes;
    for (const auto& r : rows) {
        EXPECT_GT(r.Lambda, 0);
        EXPECT_GT(r.Theta, 0);
        if (r.sts_verdict) yes.push_back(r.family);
    }
    EXPECT_EQ(yes, (std::vector<std::string>{"E_8", "E V", "E VIII", "E IX"}));
}

TEST(BuiltinTable, ExpandedInstancesAndCsv) {
    const auto rows = expanded_table(6);
    EXPECT_GT(rows.size(), builtin_table().size());
    const std::string csv = table_to_csv(builtin_table());
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,space,dim,Lambda,Theta,sts");
    EXPECT_NE(csv.find("E_8,E8,496,4,47/15,yes"), std::string::npos);
}
