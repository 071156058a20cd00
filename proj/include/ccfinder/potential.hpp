#pragma once

#include <cmath>
#include <vector>

#include "ccfinder/configuration.hpp"
#include "ccfinder/errors.hpp"
#include "ccfinder/vec2.hpp"

namespace ccfinder {

/// Scalar summary of a centered configuration: potential energy U, moment of
/// inertia I, multiplier lambda = U/I, total mass M.
struct CCScalars {
    double U;
    double I;
    double lambda;
    double M;
};

enum class Formulation { direct, weighted };

/// Per-body residual vectors of a central-configuration equation plus their
/// max Euclidean norm.
struct ResidualReport {
    std::vector<Vec2> per_body;
    double max_norm{0.0};
    Formulation formulation{Formulation::direct};
};

namespace detail {

/// 1/d^3 computed from the squared distance as (d^2)^{-3/2}.
inline double inv_cube(double d2) { return 1.0 / (d2 * std::sqrt(d2)); }

inline ResidualReport make_report(std::vector<Vec2> per_body, Formulation f) {
    ResidualReport r;
    r.per_body = std::move(per_body);
    r.formulation = f;
    for (const Vec2& v : r.per_body) r.max_norm = std::max(r.max_norm, v.norm());
    return r;
}

} // namespace detail

/// Newtonian potential: sum of m_j m_k / |q_j - q_k| over unordered pairs.
inline double potential_energy(const PlanarConfiguration& c) {
    validate(c);
    require_no_collision(c);
    const std::size_t n = c.size();
    double u = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            const double d2 = (c.positions[j] - c.positions[k]).squared_norm();
            u += c.masses[j] * c.masses[k] / std::sqrt(d2);
        }
    }
    return u;
}

/// Mass-weighted sum of squared distances from the origin (not from the
/// center of mass; center first if that is what you mean).
inline double moment_of_inertia(const PlanarConfiguration& c) {
    validate(c);
    double i = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        i += c.masses[k] * c.positions[k].squared_norm();
    }
    return i;
}

/// U, I, lambda = U/I and M for a centered configuration. The multiplier of
/// the central-configuration equation is uniquely U/I on the centered space.
inline CCScalars lambda_of(const PlanarConfiguration& c) {
    validate(c);
    require_no_collision(c);
    require_centered(c);
    const double u = potential_energy(c);
    const double i = moment_of_inertia(c);
    return CCScalars{u, i, u / i, total_mass(c)};
}

/// Residual of the mass-weighted central-configuration equation:
/// per_body[k] = sum_{j != k} m_j m_k (q_j - q_k)/|q_j - q_k|^3 + lambda m_k q_k.
/// The configuration is a CC with this lambda iff max_norm ~ 0. Requires a
/// centered configuration; this form measures q_k from the mass center.
inline ResidualReport cc_residual_direct(const PlanarConfiguration& c, double lambda) {
    validate(c);
    require_no_collision(c);
    require_centered(c);
    const std::size_t n = c.size();
    std::vector<Vec2> per_body(n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec2 acc = lambda * c.masses[k] * c.positions[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            const Vec2 diff = c.positions[j] - c.positions[k];
            acc += c.masses[j] * c.masses[k] * detail::inv_cube(diff.squared_norm()) * diff;
        }
        per_body[k] = acc;
    }
    return detail::make_report(std::move(per_body), Formulation::direct);
}

/// Residual of the translation-invariant equivalent form with s = lambda/M:
/// per_body[k] = sum_{j != k} m_j (1/|q_j - q_k|^3 - s)(q_j - q_k).
/// No centering requirement; only coordinate differences enter.
inline ResidualReport cc_residual_weighted(const PlanarConfiguration& c, double s) {
    validate(c);
    require_no_collision(c);
    const std::size_t n = c.size();
    std::vector<Vec2> per_body(n);
    for (std::size_t k = 0; k < n; ++k) {
        Vec2 acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            const Vec2 diff = c.positions[j] - c.positions[k];
            acc += c.masses[j] * (detail::inv_cube(diff.squared_norm()) - s) * diff;
        }
        per_body[k] = acc;
    }
    return detail::make_report(std::move(per_body), Formulation::weighted);
}

/// Full verdict for an arbitrary configuration: center it, take lambda = U/I,
/// and evaluate both residual forms against a pass threshold.
struct VerifyResult {
    CCScalars scalars;
    Vec2 applied_shift;        ///< center-of-mass shift removed before testing
    ResidualReport direct;
    ResidualReport weighted;
    double tol;
    bool pass;
};

inline VerifyResult verify_central_configuration(const PlanarConfiguration& c,
                                                 double tol = 1e-10) {
    validate(c);
    require_no_collision(c);
    const Vec2 shift = center_of_mass(c);
    const PlanarConfiguration centered = translate_to_cm(c);
    VerifyResult r;
    r.scalars = lambda_of(centered);
    r.applied_shift = shift;
    r.direct = cc_residual_direct(centered, r.scalars.lambda);
    r.weighted = cc_residual_weighted(centered, r.scalars.lambda / r.scalars.M);
    r.tol = tol;
    r.pass = r.direct.max_norm < tol;
    return r;
}

} // namespace ccfinder
