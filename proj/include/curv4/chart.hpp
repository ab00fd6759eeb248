#pragma once

#include <array>
#include <random>
#include <string>

#include "curv4/forms.hpp"

namespace curv4 {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double length() const { return hi - lo; }
};

/// Rectangular coordinate chart with an excluded margin band at each end of
/// every coordinate (Euler-angle charts degenerate at the ends even where the
/// geometry is smooth).  Periodic coordinates carry no boundary: the
/// coefficient formulas extend smoothly and stencils may step across the ends.
struct Chart {
    std::array<std::string, 4> names{"x0", "x1", "x2", "x3"};
    std::array<Interval, 4> domain;
    std::array<double, 4> margin{};
    std::array<bool, 4> periodic{};

    Interval effective(int mu) const {
        return {domain[mu].lo + margin[mu], domain[mu].hi - margin[mu]};
    }

    bool in_domain(const Vec4& x, double shrink = 0.0) const {
        for (int mu = 0; mu < 4; ++mu) {
            if (periodic[mu]) continue;
            if (x(mu) < domain[mu].lo + shrink || x(mu) > domain[mu].hi - shrink) return false;
        }
        return true;
    }

    /// distance from x to the raw domain boundary (smallest over
    /// non-periodic coordinates)
    double boundary_distance(const Vec4& x) const {
        double d = std::numeric_limits<double>::infinity();
        for (int mu = 0; mu < 4; ++mu) {
            if (periodic[mu]) continue;
            d = std::min(d, x(mu) - domain[mu].lo);
            d = std::min(d, domain[mu].hi - x(mu));
        }
        return d;
    }

    Vec4 random_interior(std::mt19937_64& rng) const {
        Vec4 x;
        for (int mu = 0; mu < 4; ++mu) {
            const Interval e = effective(mu);
            std::uniform_real_distribution<double> dist(e.lo, e.hi);
            x(mu) = dist(rng);
        }
        return x;
    }
};

}  // namespace curv4
