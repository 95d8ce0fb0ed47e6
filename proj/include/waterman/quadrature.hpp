#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace waterman {

/// Panel layout for composite Gauss-Legendre quadrature.
struct PanelPlan {
    /// Point toward which panels are geometrically graded (ratio 1/2).
    std::optional<double> singularity;
    /// Grading stops once panels reach this width.
    double min_width = 1e-6;
    /// Panels wider than this are split uniformly (oscillation control).
    double max_width = 0.0;  // 0 = no cap
    /// Interior points the integrand is non-smooth at.
    std::vector<double> breakpoints;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

/// Integrates fn over [a, b] with 10-point Gauss-Legendre panels laid out
/// per plan, then bisects the worst panels until the summed two-level
/// error estimate drops below tol. Throws QuadratureError (carrying the
/// achieved estimate) if the tolerance cannot be met.
QuadratureResult integrate_panels(const std::function<double(double)>& fn, double a, double b,
                                  double tol, const PanelPlan& plan);

}  // namespace waterman
