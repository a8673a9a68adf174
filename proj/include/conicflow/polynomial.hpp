#pragma once

#include "conicflow/rational.hpp"

#include <initializer_list>
#include <optional>
#include <vector>

namespace conicflow {

/// Dense univariate polynomial over the rationals, coefficients stored in
/// ascending degree. The zero polynomial has no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> ascending);
    Polynomial(std::initializer_list<Rational> ascending);

    /// x - root
    static Polynomial linear_factor(const Rational& root);
    static Polynomial constant(const Rational& c);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }

    Rational operator()(const Rational& x) const;
    double evaluate(double x) const;

    Polynomial derivative() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& s, const Polynomial& p);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Remainder of Euclidean division by a nonzero divisor.
    Polynomial remainder(const Polynomial& divisor) const;

private:
    void normalize();
    std::vector<Rational> coeffs_;
};

int sign(const Rational& r);

/// Canonical Sturm chain p, p', -rem(p, p'), ...
std::vector<Polynomial> sturm_chain(const Polynomial& p);

/// Number of distinct real roots in the half-open interval (a, b].
int count_real_roots(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b);

/// Cauchy bound: every real root r satisfies |r| < bound.
Rational cauchy_root_bound(const Polynomial& p);

/// Isolating interval [lo, hi] for the largest real root. When `exact` is set
/// the root equals `lo` (and `hi`).
struct RootInterval {
    Rational lo;
    Rational hi;
    bool exact = false;

    Rational width() const { return hi - lo; }
    double midpoint() const;
};

/// Largest real root by Sturm-guided bisection on dyadic rationals until the
/// interval is narrower than `max_width`, then exact sign confirmation at the
/// endpoints. Returns nullopt for polynomials without real roots.
std::optional<RootInterval> largest_real_root(const Polynomial& p, const Rational& max_width = Rational(1, 1000000000));

}  // namespace conicflow
