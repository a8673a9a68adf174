#pragma once

#include "conicflow/cross_section.hpp"
#include "conicflow/polynomial.hpp"
#include "conicflow/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace conicflow {

enum class MuVariant { as_printed, squared };

MuVariant parse_mu_variant(std::string_view text);
std::string to_string(MuVariant v);

/// sqrt(lambda + ((n-1)/2)^2). Throws std::invalid_argument for a negative radicand.
double nu(int n, const Rational& lambda);

struct MuExponents {
    double mu0 = 0.0;
    double mu1 = 0.0;
};

/// as_printed: sqrt(u + (n-1)/2) - (n-1)/2; squared: sqrt(u + ((n-1)/2)^2) - (n-1)/2.
/// Throws std::invalid_argument unless u0, u1 > 0.
MuExponents mu_exponents(int n, const Rational& u0, const Rational& u1, MuVariant variant);

struct IndicialData {
    int n = 0;
    Rational u0;
    Rational u1;
    MuVariant variant = MuVariant::squared;
    double mu0 = 0.0;
    double mu1 = 0.0;
};

IndicialData indicial_data(int n, const Rational& u0, const Rational& u1, MuVariant variant);

struct OpenInterval {
    double lo = 0.0;
    double hi = 0.0;

    bool empty() const { return !(lo < hi); }
};

struct WeightSample {
    double gamma0 = 0.0;
    double gamma1 = 0.0;
    double alpha = 0.0;
};

/// Admissible (gamma0, gamma1, alpha): gamma0 in (0, mu0), gamma1 in (0, mu1),
/// gamma1 <= gamma0 <= 2 gamma1, both below gamma, and
/// alpha in (0, mu0 - gamma0) and (0, mu1 - gamma1).
struct WeightWindow {
    double mu0 = 0.0;
    double mu1 = 0.0;
    double gamma = 0.0;
    OpenInterval gamma0_interval;
    OpenInterval gamma1_interval;
    /// Alpha range at the sample point; empty when infeasible.
    OpenInterval alpha_interval;
    bool feasible = false;
    std::optional<WeightSample> sample_point;
};

struct WeightOptions {
    /// Place the sample at gamma0 = gamma1 = (1 + m) / 2 with
    /// m = min(mu0, mu1, gamma) whenever m > 1.
    bool sample_above_one = false;
};

/// Throws std::invalid_argument unless gamma > 0.
WeightWindow admissible_weights(int n, double mu0, double mu1, double gamma, WeightOptions options = {});

/// Each weight inequality re-evaluated on the exact rational values of the doubles.
struct WeightCheck {
    std::vector<std::pair<std::string, bool>> inequalities;
    bool all() const;
};

WeightCheck check_weight_sample(const WeightSample& s, double mu0, double mu1, double gamma);

/// One raw condition outcome with a human-readable witness.
struct ConditionResult {
    std::string name;
    bool passed = false;
    std::string witness;
};

struct StabilityVerdict {
    std::optional<bool> tangential;
    std::optional<bool> strict;
    std::optional<bool> strong;
    std::vector<ConditionResult> conditions;
    std::vector<std::string> notes;
};

/// Tangential: TT spectrum >= 0 and no nonzero scalar eigenvalue in (n, 2(n+1)).
/// Strict: TT spectrum > 0 and none in [n, 2(n+1)].
/// Throws InsufficientSpectralData when the spectra are not complete up to 2(n+1).
StabilityVerdict check_tangential(const CrossSection& cs);

/// n + sqrt(n^2 + 2n + 1) = 2n + 1.
Rational oneform_threshold(int n);

template <std::size_t N>
using RationalMatrix = std::array<std::array<Rational, N>, N>;

Rational determinant(const RationalMatrix<2>& m);
Rational determinant(const RationalMatrix<3>& m);

/// Tangential operator on the coclosed 1-form sector for connection-Laplacian eigenvalue mu.
RationalMatrix<2> build_V3_matrix(int n, const Rational& mu);

/// The shifted sector matrix with the first column divided by mu - (n-1).
RationalMatrix<2> build_V3_shifted_matrix(int n, const Rational& mu);

/// Positive definiteness of the shifted 1-form sector, decided exactly. Holds iff mu > 2n+1.
bool v3_shifted_positive(int n, const Rational& mu);

/// The tangential operator minus n on the scalar sector for eigenvalue lambda.
RationalMatrix<3> build_V4_matrix(int n, const Rational& lambda);

/// The cubic in lambda whose sign decides the scalar sector, with the leading
/// product carrying the factor n^2.
Polynomial scalar_sector_polynomial(int n);

struct ScalarSectorResult {
    Rational P_value;
    bool positive = false;
};

ScalarSectorResult scalar_sector_condition(int n, const Rational& lambda);

/// Isolating interval of the largest real root of the scalar-sector cubic.
RootInterval scalar_sector_root(int n);

struct DetIdentityResult {
    bool minor_identity = false;
    bool full_identity = false;

    bool ok() const { return minor_identity && full_identity; }
};

/// Exact comparison of the lower-right 2x2 minor and of the full determinant
/// of the scalar-sector matrix against their closed forms.
DetIdentityResult det_identities(int n, const Rational& lambda);
bool det_identities_check(int n, const Rational& lambda);

/// TT spectrum > n, coclosed 1-forms > 2n+1, and the cubic positive at every
/// positive scalar eigenvalue. Throws InsufficientSpectralData when the
/// spectra are not certified beyond both the largest cubic root and 2n+1.
StabilityVerdict check_strong(const CrossSection& cs, MuVariant variant = MuVariant::squared);

/// Decision from (n = dim_listed, Lambda, Theta) alone.
StabilityVerdict classify_table_row(const TableRow& row);

/// u0 > n and u1 > n.
bool strong_assumption_check(const Rational& u0, const Rational& u1, int n);

}  // namespace conicflow
