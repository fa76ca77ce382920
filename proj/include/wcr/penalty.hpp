#pragma once

#include <functional>
#include <optional>

namespace wcr {

/*
 * Scalar prototype penalties g(x) = psi(|x|) used as building blocks of the
 * ridge regularizer:
 *
 *   MCP     piecewise quadratic, one knot at gamma*lambda, constant beyond;
 *           weak-convexity modulus 1/gamma
 *   SCAD    linear / quadratic blend / constant with knots at lambda and
 *           gamma*lambda; modulus 1/(gamma-1)
 *   Welsch  (lambda^2/2)(1 - exp(-x^2/lambda^2)), smooth and bounded;
 *           modulus 2*exp(-3/2), independent of lambda
 *
 * All values, derivatives and moduli are closed-form. Functions are pure and
 * thread-safe. Parameter validation happens at construction only; evaluation
 * is total.
 */

enum class PenaltyKind { mcp, scad, welsch };

struct PenaltySpec {
    PenaltyKind kind;
    double lambda; // threshold / scale, > 0
    double gamma;  // concavity knob; > 1 for MCP, > 2 for SCAD, unused for Welsch

    static PenaltySpec mcp(double lambda, double gamma);
    static PenaltySpec scad(double lambda, double gamma);
    static PenaltySpec welsch(double lambda);
};

double mcp_value(double x, const PenaltySpec& spec);
double scad_value(double x, const PenaltySpec& spec);
double welsch_value(double x, const PenaltySpec& spec);

// c(x) = mcp_value(x) + x^2/(2 gamma); convex by construction.
double mcp_convex_part(double x, const PenaltySpec& spec);

double penalty_value(double x, const PenaltySpec& spec);

// Exact derivative; 0 is returned at the MCP/SCAD origin kink (a valid
// subgradient and the symmetric choice).
double penalty_deriv(double x, const PenaltySpec& spec);

// Closed-form weak-convexity modulus: MCP 1/gamma, SCAD 1/(gamma-1),
// Welsch 2 e^{-3/2}.
double penalty_rho(const PenaltySpec& spec);

// sup of the penalty (all three prototypes saturate).
std::optional<double> penalty_saturation(const PenaltySpec& spec);

// Lipschitz bound on the derivative away from the origin kink: max |psi''|.
// Used for solver step sizes.
double penalty_deriv_lipschitz(const PenaltySpec& spec);

// Value/derivative bundle handed to the certification machinery.
struct PenaltyCalculus {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    double rho = 0.0;
    std::optional<double> saturation;
};

PenaltyCalculus penalty_calculus(const PenaltySpec& spec);

const char* penalty_kind_name(PenaltyKind kind);

} // namespace wcr
