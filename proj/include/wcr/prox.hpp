#pragma once

#include "wcr/penalty.hpp"

namespace wcr {

/*
 * Scalar proximal operators argmin_x 1/2 (x-y)^2 + step * g(x).
 *
 * MCP and SCAD have closed forms at step = 1 (firm thresholding and the
 * standard three-branch rule). MCP supports step != 1 through the exact
 * parameter rescaling (lambda, gamma) -> (step*lambda, gamma/step); SCAD's
 * knots do not rescale, so step != 1 falls back to the safeguarded Newton
 * path, as does Welsch always. All operators require step * rho < 1, the
 * regime in which the scalar objective is strictly convex.
 */

struct ProxQuery {
    double y = 0.0;
    PenaltySpec spec;
    double step = 1.0;
};

double prox_mcp(const ProxQuery& q);
double prox_scad(const ProxQuery& q);
double prox_welsch(const ProxQuery& q);

// Dispatch on q.spec.kind.
double prox_penalty(const ProxQuery& q);

// Brute-force reference: exhaustive minimization of the prox objective over
// an n-point grid on [x_min, x_max] (which must cover [-|y|, |y|]), then a
// ternary-search refinement inside the winning cell. Independent of the
// closed forms and the Newton path; intended for tests.
double prox_oracle(const ProxQuery& q, double x_min, double x_max, int n);

} // namespace wcr
