#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "ccfinder/configuration.hpp"
#include "ccfinder/errors.hpp"
#include "ccfinder/potential.hpp"
#include "ccfinder/vec2.hpp"

namespace ccfinder {

/// |divisor| below this in mass_m2 is reported as a pole instead of a value,
/// so curve tracing detects poles rather than stepping over them.
inline constexpr double kDivisorSingularTol = 1e-12;

namespace detail {

/// v^{3/2} from v = d^2, i.e. d^3 without forming d first.
inline double pow32(double v) { return v * std::sqrt(v); }

/// Squared distance from a rectangle body to its near apex body: x^2 + y^2.
inline double near_apex_sq(double x, double y) { return x * x + y * y; }

/// Squared distance from a rectangle body to the far apex body:
/// (2 + x)^2 + y^2 = x^2 + y^2 + 4x + 4.
inline double far_apex_sq(double x, double y) { return x * x + y * y + 4.0 * x + 4.0; }

} // namespace detail

inline void require_family_domain(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("family geometry requires finite x > 0 and y > 0");
    }
}

/// The six family coordinates: rectangle corners (±1, ±y), apexes (±(1+x), 0).
inline std::array<Vec2, 6> family_positions(double x, double y) {
    return {Vec2{-1.0, y},      Vec2{-1.0, -y},    Vec2{1.0, -y},
            Vec2{1.0, y},       Vec2{-1.0 - x, 0.0}, Vec2{1.0 + x, 0.0}};
}

/// Realize the family as a configuration with masses (1, 1, 1, 1, m, m).
/// The coordinates are point-symmetric, so the center of mass is exactly
/// (0, 0) for every parameter choice.
inline PlanarConfiguration build_configuration(const FamilyParams& p) {
    validate(p);
    const auto pos = family_positions(p.x, p.y);
    PlanarConfiguration c;
    c.positions.assign(pos.begin(), pos.end());
    c.masses = {1.0, 1.0, 1.0, 1.0, p.m, p.m};
    return c;
}

/// First closed-form apex mass, from the difference of the rectangle bodies'
/// horizontal and vertical multiplier equations. Positive iff y > 1; the
/// denominator is strictly positive for x, y > 0 since the far apex distance
/// strictly exceeds the near one.
inline double mass_m1(double x, double y) {
    require_family_domain(x, y);
    const double a32 = detail::pow32(detail::near_apex_sq(x, y));
    const double b32 = detail::pow32(detail::far_apex_sq(x, y));
    return 0.25 * (1.0 - 1.0 / (y * y * y)) * a32 * b32 / ((1.0 + x) * (b32 - a32));
}

/// Right-hand factor of the second apex-mass equation. Vanishes on a curve of
/// poles of mass_m2.
inline double mass_m2_divisor(double x, double y) {
    require_family_domain(x, y);
    const double a32 = detail::pow32(detail::near_apex_sq(x, y));
    const double b32 = detail::pow32(detail::far_apex_sq(x, y));
    const double opx = 1.0 + x;
    return 1.0 / a32 + 1.0 / b32 - 1.0 / (4.0 * opx * opx * opx);
}

/// Mass-free side of the second apex-mass equation.
inline double mass_m2_numerator(double x, double y) {
    require_family_domain(x, y);
    const double a32 = detail::pow32(detail::near_apex_sq(x, y));
    const double b32 = detail::pow32(detail::far_apex_sq(x, y));
    const double opx = 1.0 + x;
    return 2.0 * x / (a32 * opx) + 2.0 * (2.0 + x) / (b32 * opx) -
           1.0 / (4.0 * y * y * y) - 0.25 / detail::pow32(1.0 + y * y);
}

/// Second closed-form apex mass, from the apex body's axial equation combined
/// with the rectangle bodies' vertical one. Throws SingularDivisorError on
/// the pole curve instead of fabricating a huge value.
inline double mass_m2(double x, double y) {
    const double den = mass_m2_divisor(x, y);
    if (std::abs(den) < kDivisorSingularTol) {
        throw SingularDivisorError(
            "mass_m2 divisor (1/near_apex^3 + 1/far_apex^3 - 1/(4(1+x)^3)) is "
            "singular at x=" + std::to_string(x) + ", y=" + std::to_string(y));
    }
    return mass_m2_numerator(x, y) / den;
}

/// Matching defect F = m1 - m2. The geometry carries a central configuration
/// exactly where F = 0 with positive mass.
inline double family_F(double x, double y) { return mass_m1(x, y) - mass_m2(x, y); }

/// The multiplier solved from three independent component equations of the
/// symmetry-reduced system. All three agree exactly when (x, y, m) is a
/// central configuration.
struct ReducedLambdas {
    double rect_horizontal;  ///< from a rectangle body, horizontal component
    double rect_vertical;    ///< from a rectangle body, vertical component
    double apex_axial;       ///< from an apex body, axial component
};

/// Evaluate the three reduced multiplier expressions at (x, y, m). m = 0 is
/// allowed here; it gives the rectangle-only limits.
inline ReducedLambdas lambda_reduced(double x, double y, double m) {
    require_family_domain(x, y);
    if (!(m >= 0.0) || !std::isfinite(m)) {
        throw DomainError("lambda_reduced requires finite m >= 0");
    }
    const double a32 = detail::pow32(detail::near_apex_sq(x, y));
    const double b32 = detail::pow32(detail::far_apex_sq(x, y));
    const double diag32 = detail::pow32(1.0 + y * y);  // rectangle diagonal / 2
    const double opx = 1.0 + x;
    ReducedLambdas l;
    l.rect_horizontal = 0.25 + 0.25 / diag32 - x * m / a32 + (2.0 + x) * m / b32;
    l.rect_vertical = 0.25 / (y * y * y) + 0.25 / diag32 + m / a32 + m / b32;
    l.apex_axial = 2.0 * x / (a32 * opx) + 2.0 * (2.0 + x) / (b32 * opx) +
                   m / (4.0 * opx * opx * opx);
    return l;
}

inline ReducedLambdas lambda_reduced(const FamilyParams& p) {
    validate(p);
    return lambda_reduced(p.x, p.y, p.m);
}

/// Both closed-form masses, their defect, and (once m is supplied) the three
/// reduced multipliers at one parameter point.
struct FamilyEvaluation {
    double x;
    double y;
    double m1;
    double m2;
    double F;
    std::optional<double> m;
    std::optional<ReducedLambdas> lambdas;
};

inline FamilyEvaluation evaluate_family(double x, double y,
                                        std::optional<double> m = std::nullopt) {
    FamilyEvaluation e;
    e.x = x;
    e.y = y;
    e.m1 = mass_m1(x, y);
    e.m2 = mass_m2(x, y);
    e.F = e.m1 - e.m2;
    if (m) {
        if (!(*m > 0.0) || !std::isfinite(*m)) {
            throw DomainError("apex mass must be finite and > 0");
        }
        e.m = m;
        e.lambdas = lambda_reduced(x, y, *m);
    }
    return e;
}

} // namespace ccfinder
