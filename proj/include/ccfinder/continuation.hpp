#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ccfinder/configuration.hpp"
#include "ccfinder/errors.hpp"
#include "ccfinder/family.hpp"
#include "ccfinder/potential.hpp"

namespace ccfinder {

inline constexpr double kRootTolDefault = 1e-12;   ///< |F| tolerance at a root
inline constexpr double kStepDefault = 0.01;       ///< y step of the tracer
inline constexpr double kStepMax = 0.05;
inline constexpr double kDfdxDegenerateTol = 1e-6; ///< below this, y-parametrization is unreliable
inline constexpr double kResidualAcceptTol = 1e-10;
inline constexpr double kAnchorY = std::numbers::sqrt3;  ///< regular hexagon: (x, y, m) = (1, sqrt3, 1)
inline constexpr double kAnchorX = 1.0;

/// One point (y, x = phi(y), m, lambda) on the solution curve, with the
/// quantities the acceptance gates look at.
struct SolutionPoint {
    double y;
    double x;
    double m;
    double lambda;
    double dFdx;
    double residual_norm;
    bool multi_root_warning{false};  ///< expanded bracket held several sign changes
};

enum class TerminationReason {
    range_exhausted,
    m_nonpositive,
    dfdx_degenerate,
    divisor_singular,
    root_lost,
};

inline const char* to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::range_exhausted: return "range-exhausted";
        case TerminationReason::m_nonpositive: return "m-nonpositive";
        case TerminationReason::dfdx_degenerate: return "dFdx-degenerate";
        case TerminationReason::divisor_singular: return "divisor-singular";
        case TerminationReason::root_lost: return "root-lost";
    }
    return "unknown";
}

/// Solution points in ascending y, with the reason each end of the march
/// stopped. The extent of the curve is whatever the tracer finds; it is
/// reported, never asserted.
struct CurveTrace {
    std::vector<SolutionPoint> points;
    TerminationReason lower_end{TerminationReason::range_exhausted};
    TerminationReason upper_end{TerminationReason::range_exhausted};
};

namespace detail {

/// Central difference of F in x. Step 1e-6 scale; adequate at the tolerances
/// used here, and ift_certificate cross-checks the accuracy.
inline double family_dFdx(double x, double y, double h_scale = 1e-6) {
    const double h = h_scale * std::max(1.0, std::abs(x));
    return (family_F(x + h, y) - family_F(x - h, y)) / (2.0 * h);
}

struct ScanSample {
    double x;
    double f;
    bool valid;
};

struct BracketPick {
    double lo, flo, hi, fhi;
    bool multiple;
};

/// Scan F on a geometric grid over [x_guess/8, 8 x_guess] and return the
/// sign-change interval nearest x_guess. Samples where mass_m2 is at a pole
/// are skipped; sign changes are only taken between adjacent valid samples,
/// but a pole between them can still fake one, so the refinement stage must
/// reject intervals whose "root" does not drive |F| down.
inline std::optional<BracketPick> scan_bracket(double y, double x_guess) {
    constexpr int kStepsPerSide = 30;  // 8^(1/30) spacing, ~7% per step
    const double ratio = std::pow(8.0, 1.0 / kStepsPerSide);
    std::vector<ScanSample> grid;
    grid.reserve(2 * kStepsPerSide + 1);
    double x = x_guess / 8.0;
    for (int i = 0; i <= 2 * kStepsPerSide; ++i, x *= ratio) {
        ScanSample s{x, 0.0, true};
        try {
            s.f = family_F(x, y);
            s.valid = std::isfinite(s.f);
        } catch (const SingularDivisorError&) {
            s.valid = false;
        }
        grid.push_back(s);
    }
    std::optional<BracketPick> best;
    double best_dist = std::numeric_limits<double>::infinity();
    int count = 0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const auto& a = grid[i];
        const auto& b = grid[i + 1];
        if (!a.valid || !b.valid) continue;
        if (a.f == 0.0 || (a.f < 0.0) != (b.f < 0.0)) {
            ++count;
            const double mid = 0.5 * (a.x + b.x);
            const double dist = std::abs(mid - x_guess);
            if (dist < best_dist) {
                best_dist = dist;
                best = BracketPick{a.x, a.f, b.x, b.f, false};
            }
        }
    }
    if (best) best->multiple = count > 1;
    return best;
}

/// Newton on F with a finite-difference derivative, safeguarded by the
/// bracket: any step leaving (lo, hi) or failing to evaluate becomes a
/// bisection step. Converges on |F| < tol only; a bracket that pinches onto
/// a pole keeps |F| large and is reported as non-convergence.
inline double refine_root(double y, double lo, double flo, double hi, double fhi,
                          double start, double tol) {
    double x = std::clamp(start, lo, hi);
    for (int it = 0; it < 200; ++it) {
        double fx;
        try {
            fx = family_F(x, y);
        } catch (const SingularDivisorError&) {
            x = 0.5 * (lo + hi);
            continue;
        }
        if (std::abs(fx) < tol) return x;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if (hi - lo < 1e-17 * std::max(1.0, std::abs(x))) break;
        double next = 0.5 * (lo + hi);
        try {
            const double d = family_dFdx(x, y);
            const double newton = x - fx / d;
            if (std::isfinite(newton) && newton > lo && newton < hi) next = newton;
        } catch (const SingularDivisorError&) {
        }
        x = next;
    }
    throw RootNotConvergedError("root refinement stalled at y=" + std::to_string(y) +
                                " (bracket may contain a pole, not a root)");
}

} // namespace detail

/// Solve F(x, y) = 0 for x at fixed y by safeguarded Newton seeded at
/// x_guess, with a bracket expanded over [x_guess/8, 8 x_guess]. Attaches m,
/// lambda, dFdx and the full residual norm of the realized configuration.
inline SolutionPoint solve_phi(double y, double x_guess, double tol = kRootTolDefault) {
    if (!(y > 1.0) || !std::isfinite(y)) {
        throw DomainError("solve_phi requires y > 1 (the apex mass is positive only there)");
    }
    if (!(x_guess > 0.0) || !std::isfinite(x_guess)) {
        throw DomainError("solve_phi requires x_guess > 0");
    }
    if (!(tol > 0.0)) throw DomainError("solve_phi requires tol > 0");

    // A pole right at the seed is propagated; the scan tolerates poles
    // elsewhere in the expansion range.
    const double f_seed = family_F(x_guess, y);

    double root;
    bool multiple = false;
    if (std::abs(f_seed) < tol) {
        root = x_guess;
    } else {
        const auto bracket = detail::scan_bracket(y, x_guess);
        if (!bracket) {
            throw NoBracketError("no sign change of F in [x/8, 8x] around x_guess=" +
                                 std::to_string(x_guess) + " at y=" + std::to_string(y));
        }
        multiple = bracket->multiple;
        root = detail::refine_root(y, bracket->lo, bracket->flo, bracket->hi,
                                   bracket->fhi, x_guess, tol);
    }

    SolutionPoint p;
    p.y = y;
    p.x = root;
    p.m = mass_m1(root, y);
    p.multi_root_warning = multiple;
    if (!(p.m > 0.0)) {
        throw NonpositiveMassError("root x=" + std::to_string(root) + " at y=" +
                                   std::to_string(y) + " gives apex mass m <= 0");
    }
    const PlanarConfiguration cfg = build_configuration({root, y, p.m});
    const CCScalars sc = lambda_of(cfg);
    p.lambda = sc.lambda;
    p.residual_norm = cc_residual_direct(cfg, sc.lambda).max_norm;
    p.dFdx = detail::family_dFdx(root, y);
    return p;
}

namespace detail {

inline TerminationReason march(std::vector<SolutionPoint>& out, const SolutionPoint& anchor,
                               double y_limit, double step, double tol) {
    const double dir = y_limit >= anchor.y ? 1.0 : -1.0;
    SolutionPoint prev2 = anchor;
    SolutionPoint prev = anchor;
    bool have_two = false;
    double y = anchor.y;
    while (dir * (y_limit - y) > 1e-12) {
        y = dir > 0 ? std::min(y + step, y_limit) : std::max(y - step, y_limit);
        double guess = prev.x;
        if (have_two && prev.y != prev2.y) {
            // First-order secant prediction along the curve.
            guess = prev.x + (prev.x - prev2.x) / (prev.y - prev2.y) * (y - prev.y);
            if (!(guess > 0.0)) guess = prev.x;
        }
        SolutionPoint p;
        try {
            p = solve_phi(y, guess, tol);
        } catch (const SingularDivisorError&) {
            return TerminationReason::divisor_singular;
        } catch (const NonpositiveMassError&) {
            return TerminationReason::m_nonpositive;
        } catch (const NoBracketError&) {
            return TerminationReason::root_lost;
        } catch (const RootNotConvergedError&) {
            return TerminationReason::root_lost;
        } catch (const DomainError&) {
            return TerminationReason::root_lost;
        }
        if (!(p.residual_norm < kResidualAcceptTol)) return TerminationReason::root_lost;
        if (std::abs(p.dFdx) < kDfdxDegenerateTol) return TerminationReason::dfdx_degenerate;
        out.push_back(p);
        prev2 = prev;
        prev = p;
        have_two = true;
    }
    return TerminationReason::range_exhausted;
}

} // namespace detail

/// Natural-parameter continuation of the solution curve x = phi(y), anchored
/// at the regular hexagon (y = sqrt3, x = 1) and marched in both directions,
/// each step seeded by the previous solution. A direction stops on any solve
/// failure, nonpositive mass, a residual above kResidualAcceptTol, or a
/// degenerate dF/dx, and records why.
inline CurveTrace trace_curve(double y_min, double y_max, double step,
                              double tol = kRootTolDefault) {
    if (!(y_min > 1.0) || !(y_min <= kAnchorY) || !(kAnchorY <= y_max) ||
        !std::isfinite(y_max)) {
        throw DomainError("trace range must satisfy 1 < y_min <= sqrt3 <= y_max");
    }
    if (!(step > 0.0) || !(step <= kStepMax)) {
        throw DomainError("step must be in (0, 0.05]");
    }

    SolutionPoint anchor;
    try {
        anchor = solve_phi(kAnchorY, kAnchorX, tol);
    } catch (const std::exception& e) {
        throw AnchorFailureError(std::string("anchor solve at the hexagon failed: ") + e.what());
    }
    if (!(std::abs(anchor.x - kAnchorX) < 1e-8) ||
        !(anchor.residual_norm < kResidualAcceptTol)) {
        throw AnchorFailureError("anchor solve did not reproduce the hexagon solution");
    }

    CurveTrace trace;
    std::vector<SolutionPoint> down;
    trace.lower_end = detail::march(down, anchor, y_min, step, tol);
    trace.upper_end = detail::march(trace.points, anchor, y_max, step, tol);
    trace.points.push_back(anchor);
    trace.points.insert(trace.points.end(), down.begin(), down.end());
    std::sort(trace.points.begin(), trace.points.end(),
              [](const SolutionPoint& a, const SolutionPoint& b) { return a.y < b.y; });
    return trace;
}

/// Richardson-extrapolated central differences of the two mass functions in
/// x, certifying the implicit-function-theorem hypothesis dF/dx != 0. The
/// error fields estimate the extrapolation error.
struct IftCertificate {
    double dm1_dx;
    double dm2_dx;
    double dF_dx;
    double err_m1;
    double err_m2;
};

inline IftCertificate ift_certificate(double x, double y) {
    require_family_domain(x, y);
    mass_m2(x, y);  // the point itself must be inside both mass functions' domains
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    const auto richardson = [y](double (*f)(double, double), double x0, double h0,
                                double& err) {
        const double d1 = (f(x0 + h0, y) - f(x0 - h0, y)) / (2.0 * h0);
        const double d2 = (f(x0 + 0.5 * h0, y) - f(x0 - 0.5 * h0, y)) / h0;
        const double extrap = (4.0 * d2 - d1) / 3.0;
        err = std::abs(extrap - d2);
        return extrap;
    };
    IftCertificate c;
    c.dm1_dx = richardson(&mass_m1, x, h, c.err_m1);
    c.dm2_dx = richardson(&mass_m2, x, h, c.err_m2);
    c.dF_dx = c.dm1_dx - c.dm2_dx;
    return c;
}

} // namespace ccfinder
