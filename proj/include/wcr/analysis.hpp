#pragma once

#include <functional>
#include <vector>

#include "wcr/penalty.hpp"

namespace wcr {

/*
 * Numerical certification of weak convexity.
 *
 * estimate_concavity measures the maximum concavity of a radial profile psi
 * as the largest negative difference quotient of psi' over sampled pairs;
 * this equals the weak-convexity modulus of the symmetrized penalty.
 * certify_weak_convexity checks midpoint convexity of value + (rho/2) x^2 on
 * a grid. estimate_lipschitz_deriv lower-bounds the Lipschitz constant of a
 * derivative; the modulus never exceeds it for smooth penalties.
 *
 * Grid estimators are lower bounds of the underlying suprema; the tolerances
 * baked into the tests account for that.
 */

struct GridSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_points = 2;
    enum class Spacing { linear, logarithmic } spacing = Spacing::linear;
};

// Sample abscissae, ascending. Logarithmic spacing requires x_min > 0.
std::vector<double> grid_points(const GridSpec& grid);

// Log-spaced grid on [1e-4*lambda, 10*gamma*lambda] (10*lambda for Welsch),
// 1e5 points: resolves both near-origin curvature and saturation.
GridSpec default_penalty_grid(const PenaltySpec& spec);

struct ConcavityEstimate {
    double kappa = 0.0;       // max over sampled pairs, clamped below at 0
    double witness_x1 = 0.0;  // pair attaining the maximum
    double witness_x2 = 0.0;
    GridSpec grid;
};

// Adjacent pairs dominate the supremum for piecewise-C1 derivatives; the
// strided set guards against missing long-range structure. Exhaustive mode
// enumerates all O(n^2) pairs for audits.
enum class PairMode { adjacent_plus_strided, exhaustive };

ConcavityEstimate estimate_concavity(const std::function<double(double)>& psi_deriv,
                                     const GridSpec& grid,
                                     PairMode mode = PairMode::adjacent_plus_strided);

struct ConvexityReport {
    bool passed = true;
    // first violating triple (a, (a+b)/2, b) when failed
    double a = 0.0;
    double b = 0.0;
    double midpoint_value = 0.0;
    double chord_value = 0.0;
};

// Midpoint convexity of h(x) = value(x) + (rho/2) x^2 on every adjacent grid
// pair, with absolute tolerance 1e-10.
ConvexityReport certify_weak_convexity(const std::function<double(double)>& value,
                                       double rho, const GridSpec& grid);

// max over adjacent pairs of |deriv(x2)-deriv(x1)| / (x2-x1).
double estimate_lipschitz_deriv(const std::function<double(double)>& deriv,
                                const GridSpec& grid);

inline constexpr double kMidpointTol = 1e-10;

} // namespace wcr
