#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace mistp {

/// Trapezoidal fuzzy variable (r1,r2,r3,r4) with linear membership ramps on
/// [r1,r2] and [r3,r4] and a plateau of membership 1 on [r2,r3].
/// r1 = r2 = r3 = r4 degenerates to a crisp number.
struct TrapezoidalFuzzy {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    double r4 = 0.0;

    TrapezoidalFuzzy() = default;

    TrapezoidalFuzzy(double a, double b, double c, double d) : r1(a), r2(b), r3(c), r4(d) {
        if (!(r1 <= r2 && r2 <= r3 && r3 <= r4)) {
            throw std::invalid_argument("TrapezoidalFuzzy: components must satisfy r1 <= r2 <= r3 <= r4");
        }
    }

    static TrapezoidalFuzzy crisp(double c) { return {c, c, c, c}; }

    bool is_crisp() const { return r1 == r4; }

    /// Nonnegative scaling keeps the component order.
    TrapezoidalFuzzy scaled(double w) const {
        if (w < 0.0) {
            throw std::domain_error("TrapezoidalFuzzy::scaled: weight must be nonnegative");
        }
        return {w * r1, w * r2, w * r3, w * r4};
    }

    /// Reflection: membership of -xi at t equals membership of xi at -t.
    TrapezoidalFuzzy operator-() const { return {-r4, -r3, -r2, -r1}; }

    friend bool operator==(const TrapezoidalFuzzy&, const TrapezoidalFuzzy&) = default;
};

/// Membership (possibility distribution) of the trapezoid at x. Boundary
/// convention: the plateau is closed, so membership at r2 and r3 is 1; a
/// degenerate ramp (r1 = r2 or r3 = r4) becomes a step.
inline double membership(const TrapezoidalFuzzy& xi, double x) {
    if (x < xi.r1 || x > xi.r4) return 0.0;
    if (x >= xi.r2 && x <= xi.r3) return 1.0;
    if (x < xi.r2) return (x - xi.r1) / (xi.r2 - xi.r1);  // r1 < r2 here
    return (xi.r4 - x) / (xi.r4 - xi.r3);                 // r3 < r4 here
}

/// Pos{xi <= x} = sup of membership over (-inf, x].
inline double possibility_leq(const TrapezoidalFuzzy& xi, double x) {
    if (x >= xi.r2) return 1.0;
    if (x < xi.r1) return 0.0;
    return (x - xi.r1) / (xi.r2 - xi.r1);
}

/// Nec{xi <= x} = 1 - sup of membership over (x, inf).
inline double necessity_leq(const TrapezoidalFuzzy& xi, double x) {
    if (x >= xi.r4) return 1.0;
    if (x < xi.r3) return 0.0;
    return (x - xi.r3) / (xi.r4 - xi.r3);
}

/// Cr{xi <= x}: half-sum of possibility and necessity. Piecewise linear,
/// nondecreasing, 0 below r1, 1/2 on [r2,r3], 1 from r4 on.
inline double credibility_leq(const TrapezoidalFuzzy& xi, double x) {
    return 0.5 * (possibility_leq(xi, x) + necessity_leq(xi, x));
}

/// Cr{xi >= x}, via Cr{-xi <= -x}.
inline double credibility_geq(const TrapezoidalFuzzy& xi, double x) {
    return credibility_leq(-xi, -x);
}

namespace detail {
inline void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::domain_error("alpha must lie in (0, 1]");
    }
}
}  // namespace detail

/// alpha-pessimistic value: inf{r : Cr{xi <= r} >= alpha}.
inline double pessimistic_value(const TrapezoidalFuzzy& xi, double alpha) {
    detail::check_alpha(alpha);
    if (alpha <= 0.5) return (1.0 - 2.0 * alpha) * xi.r1 + 2.0 * alpha * xi.r2;
    return 2.0 * (1.0 - alpha) * xi.r3 + (2.0 * alpha - 1.0) * xi.r4;
}

/// alpha-optimistic value: sup{r : Cr{xi >= r} >= alpha}.
inline double optimistic_value(const TrapezoidalFuzzy& xi, double alpha) {
    detail::check_alpha(alpha);
    if (alpha <= 0.5) return 2.0 * alpha * xi.r3 + (1.0 - 2.0 * alpha) * xi.r4;
    return (2.0 * alpha - 1.0) * xi.r1 + 2.0 * (1.0 - alpha) * xi.r2;
}

/// Sum of nonnegatively weighted trapezoids, again trapezoidal: the weighted
/// sum applies componentwise. Empty input gives the crisp zero.
inline TrapezoidalFuzzy linear_combination(const std::vector<std::pair<double, TrapezoidalFuzzy>>& terms) {
    double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
    for (const auto& [w, xi] : terms) {
        if (w < 0.0) {
            throw std::domain_error("linear_combination: weights must be nonnegative");
        }
        r1 += w * xi.r1;
        r2 += w * xi.r2;
        r3 += w * xi.r3;
        r4 += w * xi.r4;
    }
    return {r1, r2, r3, r4};
}

}  // namespace mistp
