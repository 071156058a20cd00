#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ccfinder/errors.hpp"
#include "ccfinder/vec2.hpp"

namespace ccfinder {

/// Pairs closer than this are rejected by potential/residual computations:
/// the potential is singular on collisions and near-collisions destroy
/// conditioning.
inline constexpr double kCollisionTol = 1e-9;

/// N coplanar point masses, dimensionless units, G = 1. A plain value type;
/// all operations on it are pure free functions.
struct PlanarConfiguration {
    std::vector<Vec2> positions;
    std::vector<double> masses;

    std::size_t size() const { return positions.size(); }
};

/// Geometry and apex mass of the two-isosceles-triangle 6-body family.
/// The rectangle bodies sit at (±1, ±y) with unit mass, the apex bodies at
/// (±(1+x), 0) with mass m.
struct FamilyParams {
    double x;  ///< horizontal offset of the apex bodies beyond x = ±1
    double y;  ///< half-height of the rectangle
    double m;  ///< common apex mass
};

inline void validate(const FamilyParams& p) {
    if (!(p.x > 0.0) || !(p.y > 0.0) || !(p.m > 0.0) ||
        !std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.m)) {
        throw DomainError("family parameters require finite x > 0, y > 0, m > 0");
    }
}

inline double total_mass(const PlanarConfiguration& c) {
    double m = 0.0;
    for (double mi : c.masses) m += mi;
    return m;
}

/// Structural invariants: N >= 2, matching lengths, finite data, strictly
/// positive masses, pairwise distinct positions.
inline void validate(const PlanarConfiguration& c) {
    const std::size_t n = c.positions.size();
    if (n < 2) throw DomainError("configuration needs at least 2 bodies");
    if (c.masses.size() != n) {
        throw DomainError("positions and masses must have equal length");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(c.positions[i].x) || !std::isfinite(c.positions[i].y)) {
            throw DomainError("position " + std::to_string(i) + " is not finite");
        }
        if (!(c.masses[i] > 0.0) || !std::isfinite(c.masses[i])) {
            throw DomainError("mass " + std::to_string(i) + " must be finite and > 0");
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            if ((c.positions[j] - c.positions[k]).squared_norm() == 0.0) {
                throw CollisionError("bodies " + std::to_string(j) + " and " +
                                     std::to_string(k) + " coincide");
            }
        }
    }
}

inline double min_pairwise_distance(const PlanarConfiguration& c) {
    const std::size_t n = c.positions.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            best = std::min(best, (c.positions[j] - c.positions[k]).squared_norm());
        }
    }
    return std::sqrt(best);
}

inline void require_no_collision(const PlanarConfiguration& c,
                                 double tol = kCollisionTol) {
    const double d = min_pairwise_distance(c);
    if (!(d >= tol)) {
        throw CollisionError("minimum pairwise distance " + std::to_string(d) +
                             " is below the collision tolerance");
    }
}

inline Vec2 center_of_mass(const PlanarConfiguration& c) {
    Vec2 s{0.0, 0.0};
    for (std::size_t i = 0; i < c.positions.size(); ++i) {
        s += c.masses[i] * c.positions[i];
    }
    return s / total_mass(c);
}

inline double max_position_norm(const PlanarConfiguration& c) {
    double best = 0.0;
    for (const Vec2& q : c.positions) best = std::max(best, q.norm());
    return best;
}

/// Relative centering criterion: |com| < 1e-12 (1 + max |q_k|).
inline bool is_centered(const PlanarConfiguration& c) {
    return center_of_mass(c).norm() < 1e-12 * (1.0 + max_position_norm(c));
}

inline void require_centered(const PlanarConfiguration& c) {
    if (!is_centered(c)) {
        throw NotCenteredError("configuration center of mass is not at the origin");
    }
}

/// Shift so the center of mass lands on the origin. Pairwise distances are
/// unchanged; already-centered inputs with an exactly zero center of mass
/// come back bit-identical.
inline PlanarConfiguration translate_to_cm(const PlanarConfiguration& c) {
    const Vec2 com = center_of_mass(c);
    PlanarConfiguration out;
    out.positions.reserve(c.positions.size());
    for (const Vec2& q : c.positions) out.positions.push_back(q - com);
    out.masses = c.masses;
    return out;
}

} // namespace ccfinder
