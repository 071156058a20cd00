#pragma once

#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ccfinder/configuration.hpp"
#include "ccfinder/errors.hpp"
#include "ccfinder/family.hpp"
#include "ccfinder/potential.hpp"

namespace ccfinder {

/// Singular values below kRankTol times the largest count as nullspace.
/// The system's entries are O(1) near the hexagon, so this separates true
/// nullspaces (residuals ~1e-15) from near misses (~1e-4 off the curve).
inline constexpr double kRankTol = 1e-10;

/// Coefficient matrix of the homogeneous system A u = 0 in the unknowns
/// u = (m_1..m_6, lambda) for the family geometry at (x, y): twelve rows for
/// the per-body, per-component CC equations divided by m_k, plus two rows
/// pinning the center of mass at the origin. A mass assignment makes the
/// geometry a CC iff A u = 0 has a solution with all m_j > 0.
inline Eigen::Matrix<double, 14, 7> assemble_cc_system(double x, double y) {
    require_family_domain(x, y);
    const auto q = family_positions(x, y);
    Eigen::Matrix<double, 14, 7> a = Eigen::Matrix<double, 14, 7>::Zero();
    int row = 0;
    for (int k = 0; k < 6; ++k) {
        for (int comp = 0; comp < 2; ++comp, ++row) {
            for (int j = 0; j < 6; ++j) {
                if (j == k) continue;
                const Vec2 diff = q[j] - q[k];
                const double w = detail::inv_cube(diff.squared_norm());
                a(row, j) = (comp == 0 ? diff.x : diff.y) * w;
            }
            a(row, 6) = (comp == 0 ? q[k].x : q[k].y);
        }
    }
    for (int j = 0; j < 6; ++j) {
        a(12, j) = q[j].x;
        a(13, j) = q[j].y;
    }
    return a;
}

/// Mass vector and multiplier extracted from the nullspace of the CC system,
/// with rank diagnostics and the residual of the realized configuration.
struct MassSolution {
    std::array<double, 6> masses{};          ///< scaled so masses[0] = 1 when a nullspace exists
    double lambda{std::numeric_limits<double>::quiet_NaN()};
    int nullspace_dim{0};
    double smallest_singular_value{0.0};
    double largest_singular_value{0.0};
    double residual_norm{std::numeric_limits<double>::quiet_NaN()};
    bool all_masses_positive{false};
    bool valid{false};           ///< one-dimensional nullspace with positive masses
    bool degenerate_rank{false}; ///< nullspace dimension >= 2
};

/// Determine every admissible mass vector for the geometry (x, y) via SVD of
/// the assembled system. nullspace_dim = 0 is a definite negative (no CC at
/// this geometry), not an error. Sign-indefinite nullspace vectors are
/// reported with valid = false rather than discarded; they are useful when
/// scanning.
inline MassSolution solve_masses(double x, double y, double tol = kRankTol) {
    if (!(tol > 0.0)) throw DomainError("singular-value threshold must be > 0");
    const Eigen::Matrix<double, 14, 7> a = assemble_cc_system(x, y);
    const Eigen::JacobiSVD<Eigen::Matrix<double, 14, 7>> svd(a, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();

    MassSolution sol;
    sol.largest_singular_value = sigma(0);
    sol.smallest_singular_value = sigma(6);
    const double cutoff = tol * sigma(0);
    for (int i = 0; i < 7; ++i) {
        if (sigma(i) < cutoff) ++sol.nullspace_dim;
    }
    sol.degenerate_rank = sol.nullspace_dim >= 2;
    if (sol.nullspace_dim == 0) return sol;

    Eigen::Matrix<double, 7, 1> u = svd.matrixV().col(6);
    if (std::abs(u(0)) < 1e-12 * u.norm()) {
        // Nullspace vector with (numerically) zero first mass cannot be put
        // in the masses[0] = 1 normalization.
        for (int i = 0; i < 6; ++i) sol.masses[i] = u(i);
        sol.lambda = u(6);
        return sol;
    }
    u /= u(0);
    for (int i = 0; i < 6; ++i) sol.masses[i] = u(i);
    sol.lambda = u(6);
    sol.all_masses_positive = true;
    for (double m : sol.masses) {
        if (!(m > 0.0)) sol.all_masses_positive = false;
    }

    if (sol.all_masses_positive) {
        PlanarConfiguration cfg;
        const auto pos = family_positions(x, y);
        cfg.positions.assign(pos.begin(), pos.end());
        cfg.masses.assign(sol.masses.begin(), sol.masses.end());
        // The COM rows hold in the nullspace, so this shift is ~1e-16.
        cfg = translate_to_cm(cfg);
        sol.residual_norm = cc_residual_direct(cfg, sol.lambda).max_norm;
    }
    sol.valid = sol.nullspace_dim == 1 && sol.all_masses_positive &&
                sol.residual_norm < tol * sol.largest_singular_value;
    return sol;
}

/// Defects of the four mass-difference relations that force the symmetry of
/// any admissible mass vector, plus the direct symmetry gaps. The
/// coefficients degenerate where the diagonal or vertical inverse-cube
/// distance equals the horizontal one; that is flagged, since the
/// cancellation argument loses force there.
struct SymmetryReport {
    std::array<double, 4> relation_defects{};
    std::array<double, 4> gaps{};  ///< |m1-m2|, |m1-m3|, |m1-m4|, |m5-m6|
    bool degenerate_coefficients{false};
};

inline SymmetryReport check_symmetry_relations(const std::array<double, 6>& masses,
                                               double y) {
    if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("y must be finite and > 0");
    const double c_diag = detail::inv_cube(4.0 + 4.0 * y * y);  // rectangle diagonal
    const double c_vert = detail::inv_cube(4.0 * y * y);        // vertical side 2y
    const double c_horz = 0.125;                                // horizontal side 2

    const double m1 = masses[0], m2 = masses[1], m3 = masses[2];
    const double m4 = masses[3], m5 = masses[4], m6 = masses[5];

    SymmetryReport r;
    r.relation_defects[0] = (m3 - m4) * (c_diag - c_horz);
    r.relation_defects[1] = (m1 - m2) * (c_diag - c_horz);
    r.relation_defects[2] = (c_diag - c_horz) * (m1 - m3) + (c_vert - c_horz) * (m4 - m2);
    r.relation_defects[3] = (c_vert - c_horz) * (m1 - m3) + (c_diag - c_horz) * (m4 - m2);
    r.gaps[0] = std::abs(m1 - m2);
    r.gaps[1] = std::abs(m1 - m3);
    r.gaps[2] = std::abs(m1 - m4);
    r.gaps[3] = std::abs(m5 - m6);
    r.degenerate_coefficients =
        std::abs(c_diag - c_horz) < 1e-12 || std::abs(c_vert - c_horz) < 1e-12;
    return r;
}

} // namespace ccfinder
