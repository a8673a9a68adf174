#pragma once

// Smooth radial profiles shared by the oracle comparisons in the unit and
// acceptance suites.

#include "chart_oracle.hpp"
#include "conicflow/cone_geometry.hpp"
#include "conicflow/flow.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace testing_support {

using Fn = std::function<double(double)>;

/// q = 1 + a1 sin(b1 x + c1), phi = x (1 + a2 cos(b2 x + c2)).
struct Profile {
    double a1, b1, c1, a2, b2, c2;

    Fn q() const {
        const auto s = *this;
        return [s](double x) { return 1.0 + s.a1 * std::sin(s.b1 * x + s.c1); };
    }
    Fn phi() const {
        const auto s = *this;
        return [s](double x) { return x * (1.0 + s.a2 * std::cos(s.b2 * x + s.c2)); };
    }
};

inline Profile random_profile(std::mt19937& rng) {
    std::uniform_real_distribution<double> amp(-0.2, 0.2);
    std::uniform_real_distribution<double> freq(0.5, 2.0);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    return {amp(rng), freq(rng), phase(rng), amp(rng), freq(rng), phase(rng)};
}

/// Uniform grid on [0.5, 1.5] with N even, so x = 1 is node N/2.
inline conicflow::RadialGrid unit_grid(int N, int order) { return conicflow::make_grid(0.5, 1.5, N, 1.0, order); }

inline conicflow::WarpedMetric sample(const conicflow::RadialGrid& grid, const Fn& q, const Fn& phi) {
    conicflow::WarpedMetric g{grid, {}, {}};
    for (double x : grid.x) {
        g.q.push_back(q(x));
        g.phi.push_back(phi(x));
    }
    return g;
}

inline std::vector<double> sample(const conicflow::RadialGrid& grid, const Fn& f) {
    std::vector<double> v;
    for (double x : grid.x) v.push_back(f(x));
    return v;
}

inline double order_of(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace testing_support
