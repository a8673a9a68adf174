#include "conicflow/stability.hpp"

#include "conicflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace conicflow {

MuVariant parse_mu_variant(std::string_view text) {
    if (text == "squared") return MuVariant::squared;
    if (text == "printed" || text == "as_printed") return MuVariant::as_printed;
    throw ConfigError("unknown variant '" + std::string(text) + "' (expected printed or squared)");
}

std::string to_string(MuVariant v) { return v == MuVariant::squared ? "squared" : "as_printed"; }

double nu(int n, const Rational& lambda) {
    const Rational half(n - 1, 2);
    const Rational radicand = lambda + half * half;
    if (radicand < 0) throw std::invalid_argument("nu: negative radicand " + to_string(radicand));
    return std::sqrt(to_double(radicand));
}

MuExponents mu_exponents(int n, const Rational& u0, const Rational& u1, MuVariant variant) {
    if (u0 <= 0 || u1 <= 0) throw std::invalid_argument("mu_exponents needs u0, u1 > 0");
    const Rational half(n - 1, 2);
    const Rational shift = variant == MuVariant::squared ? half * half : half;
    auto mu = [&](const Rational& u) { return std::sqrt(to_double(u + shift)) - to_double(half); };
    return {mu(u0), mu(u1)};
}

IndicialData indicial_data(int n, const Rational& u0, const Rational& u1, MuVariant variant) {
    const auto mu = mu_exponents(n, u0, u1, variant);
    return IndicialData{n, u0, u1, variant, mu.mu0, mu.mu1};
}

bool WeightCheck::all() const {
    return std::all_of(inequalities.begin(), inequalities.end(), [](const auto& p) { return p.second; });
}

WeightCheck check_weight_sample(const WeightSample& s, double mu0, double mu1, double gamma) {
    const Rational g0 = exact_rational(s.gamma0);
    const Rational g1 = exact_rational(s.gamma1);
    const Rational a = exact_rational(s.alpha);
    const Rational m0 = exact_rational(mu0);
    const Rational m1 = exact_rational(mu1);
    const Rational g = exact_rational(gamma);
    WeightCheck c;
    c.inequalities = {
        {"0 < gamma0 < mu0", g0 > 0 && g0 < m0},
        {"gamma0 <= 2 gamma1", g0 <= 2 * g1},
        {"gamma0 < gamma", g0 < g},
        {"0 < gamma1 < mu1", g1 > 0 && g1 < m1},
        {"gamma1 <= gamma0", g1 <= g0},
        {"gamma1 < gamma", g1 < g},
        {"0 < alpha < mu0 - gamma0", a > 0 && a < m0 - g0},
        {"alpha < mu1 - gamma1", a < m1 - g1},
    };
    return c;
}

WeightWindow admissible_weights(int /*n*/, double mu0, double mu1, double gamma, WeightOptions options) {
    if (!(gamma > 0)) throw std::invalid_argument("admissible_weights needs gamma > 0");
    WeightWindow w;
    w.mu0 = mu0;
    w.mu1 = mu1;
    w.gamma = gamma;
    w.gamma0_interval = {0.0, std::min(mu0, gamma)};
    w.gamma1_interval = {0.0, std::min(mu1, gamma)};
    if (!(mu0 > 0) || !(mu1 > 0)) return w;

    constexpr double shrink = 1.0 - 1e-6;
    WeightSample s;
    const double m = std::min({mu0, mu1, gamma});
    if (options.sample_above_one && m > 1.0) {
        s.gamma0 = s.gamma1 = 0.5 * (1.0 + m);
    } else {
        s.gamma1 = shrink * std::min({mu1, gamma, mu0});
        s.gamma0 = std::max(shrink * std::min({mu0, 2.0 * s.gamma1, gamma}), s.gamma1);
    }
    const double slack = std::min(mu0 - s.gamma0, mu1 - s.gamma1);
    s.alpha = 0.5 * slack;
    if (check_weight_sample(s, mu0, mu1, gamma).all()) {
        w.feasible = true;
        w.sample_point = s;
        w.alpha_interval = {0.0, slack};
    }
    return w;
}

namespace {

std::string join(const std::vector<Rational>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + to_string(values[i]);
    return out;
}

}  // namespace

StabilityVerdict check_tangential(const CrossSection& cs) {
    const Rational lo(cs.n);
    const Rational hi(2 * (cs.n + 1));
    if (cs.spectra_complete_below < hi)
        throw InsufficientSpectralData("insufficient spectral data: tangential check needs spectra complete below " +
                                       to_string(hi) + ", have " + to_string(cs.spectra_complete_below));

    StabilityVerdict v;
    std::vector<Rational> tt_negative;
    std::vector<Rational> tt_nonpositive;
    for (const auto& k : cs.tt_einstein_spectrum) {
        if (k < 0) tt_negative.push_back(k);
        if (k <= 0) tt_nonpositive.push_back(k);
    }
    std::vector<Rational> open_hits;
    std::vector<Rational> closed_hits;
    for (const auto& l : cs.scalar_spectrum) {
        if (l == 0) continue;
        if (l > lo && l < hi) open_hits.push_back(l);
        if (l >= lo && l <= hi) closed_hits.push_back(l);
    }
    const std::string interval = to_string(lo) + ", " + to_string(hi);
    v.conditions.push_back({"TT spectrum >= 0", tt_negative.empty(),
                            tt_negative.empty() ? "none negative" : "negative: " + join(tt_negative)});
    v.conditions.push_back({"scalar spectrum avoids (" + interval + ")", open_hits.empty(),
                            open_hits.empty() ? "no hit" : "hit: " + join(open_hits)});
    v.conditions.push_back({"TT spectrum > 0", tt_nonpositive.empty(),
                            tt_nonpositive.empty() ? "all positive" : "nonpositive: " + join(tt_nonpositive)});
    v.conditions.push_back({"scalar spectrum avoids [" + interval + "]", closed_hits.empty(),
                            closed_hits.empty() ? "no hit" : "hit: " + join(closed_hits)});
    v.tangential = tt_negative.empty() && open_hits.empty();
    v.strict = tt_nonpositive.empty() && closed_hits.empty();
    return v;
}

Rational oneform_threshold(int n) {
    // n^2 + 2n + 1 = (n+1)^2, so the square root is exact.
    return Rational(n) + Rational(n + 1);
}

Rational determinant(const RationalMatrix<2>& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Rational determinant(const RationalMatrix<3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

RationalMatrix<2> build_V3_matrix(int n, const Rational& mu) {
    const Rational d = mu - (n - 1);
    RationalMatrix<2> m;
    m[0][0] = d * d / 2;
    m[0][1] = m[1][0] = -2 * d;
    m[1][1] = 2 * mu + (2 * n + 6);
    return m;
}

RationalMatrix<2> build_V3_shifted_matrix(int n, const Rational& mu) {
    RationalMatrix<2> m;
    m[0][0] = (mu - (2 * n - 1)) / 2;
    m[0][1] = -2 * (mu - (n - 1));
    m[1][0] = Rational(-2);
    m[1][1] = 2 * mu + 6;
    return m;
}

bool v3_shifted_positive(int n, const Rational& mu) {
    const auto b = build_V3_shifted_matrix(n, mu);
    return b[0][0] > 0 && determinant(b) > 0;
}

RationalMatrix<3> build_V4_matrix(int n, const Rational& lambda) {
    const Rational l = lambda;
    RationalMatrix<3> m;
    m[0][0] = Rational(n * (n - 1)) * l * (l - n) * (l - 2 * (n - 1) - n);
    m[1][1] = 2 * l * (l - (n - 1) + 3);
    m[2][2] = Rational(n) * (Rational(n + 1) * l - 2 * (n - 1) - n * (n + 1) + 2 * n * (n + 3));
    m[0][1] = m[1][0] = Rational(-4 * (n - 1)) * l * (l - n);
    m[1][2] = m[2][1] = Rational(4 * (n + 1)) * l;
    m[0][2] = m[2][0] = Rational(0);
    return m;
}

Polynomial scalar_sector_polynomial(int n) {
    const Polynomial x{Rational(0), Rational(1)};
    auto shift = [&](long c) { return x + Polynomial::constant(Rational(c)); };
    const Rational nn(n);
    const Polynomial first = nn * nn * (shift(-3L * n + 2) * shift(4 - n) * shift(n + 2));
    const Polynomial second = Rational(8 * n * (n - 1)) * (shift(-n) * shift(n + 2));
    const Polynomial third = Rational(8 * n * (n + 1)) * (x * shift(-3L * n + 2));
    return first - second - third;
}

ScalarSectorResult scalar_sector_condition(int n, const Rational& lambda) {
    const Rational value = scalar_sector_polynomial(n)(lambda);
    return {value, value > 0};
}

RootInterval scalar_sector_root(int n) {
    const auto root = largest_real_root(scalar_sector_polynomial(n));
    if (!root) throw std::logic_error("scalar-sector cubic has no real root");
    return *root;
}

DetIdentityResult det_identities(int n, const Rational& lambda) {
    const auto a = build_V4_matrix(n, lambda);
    const Rational l = lambda;
    const Rational nn(n);
    DetIdentityResult r;
    const Rational minor = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    const Rational minor_closed =
        l * (2 * nn * (n + 1) * l * l - 4 * Rational((n + 1) * (n + 4)) * l - 2 * nn * (n - 4) * (n * n + 3 * n + 2));
    r.minor_identity = minor == minor_closed;
    const Rational full_closed =
        Rational(n - 1) * l * (l - n) * 2 * l * Rational(n + 1) * scalar_sector_polynomial(n)(l);
    r.full_identity = determinant(a) == full_closed;
    return r;
}

bool det_identities_check(int n, const Rational& lambda) { return det_identities(n, lambda).ok(); }

StabilityVerdict check_strong(const CrossSection& cs, MuVariant variant) {
    const int n = cs.n;
    const RootInterval root = scalar_sector_root(n);
    const Rational oneform = oneform_threshold(n);
    // An unlisted eigenvalue may sit exactly at complete_below, so every
    // threshold must lie strictly below it.
    const bool root_covered = root.exact ? cs.spectra_complete_below > root.lo : cs.spectra_complete_below >= root.hi;
    if (!root_covered || cs.spectra_complete_below <= oneform) {
        std::ostringstream msg;
        msg << "insufficient spectral data: strong check needs spectra complete beyond "
            << (root.exact ? to_string(root.lo) : "~" + std::to_string(root.midpoint())) << " and " << to_string(oneform)
            << ", have " << to_string(cs.spectra_complete_below);
        throw InsufficientSpectralData(msg.str());
    }

    StabilityVerdict v;
    std::vector<Rational> tt_fail;
    for (const auto& k : cs.tt_einstein_spectrum)
        if (k <= n) tt_fail.push_back(k);
    v.conditions.push_back(
        {"TT spectrum > n", tt_fail.empty(), tt_fail.empty() ? "all > " + std::to_string(n) : "TT <= n: " + join(tt_fail)});

    std::vector<Rational> oneform_fail;
    for (const auto& m : cs.coclosed_oneform_spectrum)
        if (m <= oneform) oneform_fail.push_back(m);
    v.conditions.push_back({"1-form spectrum > " + to_string(oneform), oneform_fail.empty(),
                            oneform_fail.empty() ? "all above" : "1-form <= 2n+1: " + join(oneform_fail)});

    bool scalar_ok = true;
    std::string scalar_witness;
    for (const auto& l : cs.scalar_spectrum) {
        if (l <= 0) continue;
        const auto r = scalar_sector_condition(n, l);
        if (!r.positive) {
            scalar_ok = false;
            scalar_witness += (scalar_witness.empty() ? "" : "; ") + ("P(" + to_string(l) + ") = " + to_string(r.P_value));
        }
    }
    if (scalar_ok) scalar_witness = "P > 0 on listed eigenvalues; unlisted ones exceed the largest root";
    v.conditions.push_back({"scalar sector P(lambda) > 0", scalar_ok, scalar_witness});

    v.strong = tt_fail.empty() && oneform_fail.empty() && scalar_ok;
    v.notes.push_back("largest root of P: " +
                      (root.exact ? to_string(root.lo) : "in [" + to_string(root.lo) + ", " + to_string(root.hi) + "]"));

    const Rational* u1 = nullptr;
    for (const auto& l : cs.scalar_spectrum)
        if (l > 0) {
            u1 = &l;
            break;
        }
    if (u1) {
        const double mu1 = mu_exponents(n, *u1, *u1, variant).mu1;
        std::ostringstream note;
        note.precision(17);
        note << "u1 = " << to_string(*u1) << ", mu1 (" << to_string(variant) << ") = " << mu1;
        v.notes.push_back(note.str());
    }
    return v;
}

StabilityVerdict classify_table_row(const TableRow& row) {
    const int n = row.dim_listed;
    const Rational nm1(n - 1);
    StabilityVerdict v;

    const Rational tt_lhs = nm1 * row.Theta - 2 * nm1;
    const bool tt_ok = tt_lhs > n;
    v.conditions.push_back({"TT: (n-1)Theta - 2(n-1) > n", tt_ok, to_string(tt_lhs) + " vs " + std::to_string(n)});

    const Rational oneform_lhs = nm1 * row.Theta;
    const Rational oneform_rhs = Rational(2 * n - 1) + Rational(n + 1);
    const bool oneform_ok = oneform_lhs > oneform_rhs;
    v.conditions.push_back(
        {"1-form: (n-1)Theta > 3n", oneform_ok, to_string(oneform_lhs) + " vs " + to_string(oneform_rhs)});

    const Rational lambda = nm1 * row.Lambda;
    const auto p = scalar_sector_condition(n, lambda);
    const RootInterval root = scalar_sector_root(n);
    // Every other nonzero eigenvalue exceeds lambda, so the cubic stays
    // positive on the spectrum exactly when lambda clears the largest root.
    const bool above_root = root.exact ? lambda > root.lo : lambda >= root.hi;
    const bool scalar_ok = p.positive && above_root;
    v.conditions.push_back({"scalar: P((n-1)Lambda) > 0", scalar_ok,
                            "P(" + to_string(lambda) + ") = " + to_string(p.P_value) +
                                (scalar_ok ? "" : (p.positive ? " (below largest root)" : " (P <= 0)"))});

    v.strong = tt_ok && oneform_ok && scalar_ok;
    if (row.Theta <= 3) v.notes.push_back("Theta <= 3: TT and 1-form conditions both fail");
    v.notes.push_back("n taken as the listed dimension " + std::to_string(n));
    return v;
}

bool strong_assumption_check(const Rational& u0, const Rational& u1, int n) { return u0 > n && u1 > n; }

}  // namespace conicflow
