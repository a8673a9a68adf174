#include "conicflow/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace conicflow {

Polynomial::Polynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<Rational> ascending) : coeffs_(ascending) { normalize(); }

Polynomial Polynomial::linear_factor(const Rational& root) { return Polynomial{-root, Rational(1)}; }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial{c}; }

void Polynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc{0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::evaluate(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
    std::vector<Rational> c = p.coeffs_;
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::remainder(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rational> r = coeffs_;
    const int dd = divisor.degree();
    const Rational& lead = divisor.leading();
    for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
        if (r[k] == 0) continue;
        const Rational factor = r[k] / lead;
        for (int j = 0; j <= dd; ++j) r[k - dd + j] -= factor * divisor.coeffs_[j];
    }
    r.resize(std::min<std::size_t>(r.size(), static_cast<std::size_t>(std::max(dd, 0))));
    return Polynomial(std::move(r));
}

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
    std::vector<Polynomial> chain;
    if (p.is_zero()) return chain;
    chain.push_back(p);
    Polynomial next = p.derivative();
    while (!next.is_zero()) {
        chain.push_back(next);
        const Polynomial& a = chain[chain.size() - 2];
        next = Rational(-1) * a.remainder(chain.back());
    }
    return chain;
}

namespace {

Polynomial exact_quotient(const Polynomial& p, const Polynomial& d) {
    std::vector<Rational> rem = p.coefficients();
    const int dd = d.degree();
    if (p.degree() < dd) return Polynomial{};
    std::vector<Rational> quot(p.degree() - dd + 1);
    for (int k = p.degree() - dd; k >= 0; --k) {
        const Rational c = rem[k + dd] / d.leading();
        quot[k] = c;
        for (int j = 0; j <= dd; ++j) rem[k + j] -= c * d.coefficients()[j];
    }
    return Polynomial(std::move(quot));
}

int sign_changes(const std::vector<Polynomial>& chain, const Rational& x) {
    int changes = 0;
    int previous = 0;
    for (const auto& f : chain) {
        const int s = sign(f(x));
        if (s == 0) continue;
        if (previous != 0 && s != previous) ++changes;
        previous = s;
    }
    return changes;
}

}  // namespace

int count_real_roots(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b) {
    if (chain.empty()) return 0;
    if (chain.back().degree() < 1) return sign_changes(chain, a) - sign_changes(chain, b);
    // Repeated roots: divide out gcd(p, p') so an endpoint at a repeated root
    // does not zero the whole chain.
    std::vector<Polynomial> reduced;
    for (const auto& f : chain) reduced.push_back(exact_quotient(f, chain.back()));
    return sign_changes(reduced, a) - sign_changes(reduced, b);
}

Rational cauchy_root_bound(const Polynomial& p) {
    if (p.degree() < 1) return Rational(1);
    Rational max_ratio{0};
    for (int i = 0; i < p.degree(); ++i) {
        Rational ratio = p.coefficients()[i] / p.leading();
        if (ratio < 0) ratio = -ratio;
        max_ratio = std::max(max_ratio, ratio);
    }
    return Rational(1) + max_ratio;
}

double RootInterval::midpoint() const { return to_double((lo + hi) / 2); }

std::optional<RootInterval> largest_real_root(const Polynomial& p, const Rational& max_width) {
    if (p.degree() < 1) return std::nullopt;
    const auto chain = sturm_chain(p);
    const Rational bound = cauchy_root_bound(p);
    Rational lo = -bound;
    Rational hi = bound;
    if (count_real_roots(chain, lo, hi) == 0) return std::nullopt;

    // Invariant: the largest root lies in (lo, hi].
    while (hi - lo >= max_width) {
        const Rational mid = (lo + hi) / 2;
        if (p(mid) == 0 && count_real_roots(chain, mid, hi) == 0) return RootInterval{mid, mid, true};
        if (count_real_roots(chain, mid, hi) > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (p(hi) == 0) return RootInterval{hi, hi, true};
    return RootInterval{lo, hi, false};
}

}  // namespace conicflow
