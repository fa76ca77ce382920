#pragma once

#include <optional>
#include <vector>

#include "wcr/image.hpp"
#include "wcr/regop.hpp"

namespace wcr {

/*
 * Denoising solver for
 *
 *   minimize_x  1/2 ||y - x||^2 + g(x)
 *
 * with a weakly convex g of modulus rho_total < 1, which makes the objective
 * (1 - rho_total)-strongly convex. Gradient descent from x0 = y with the
 * certified step 1/(1 + L_g), L_g = sum_k mu_k L_k s_k, descends
 * monotonically and converges linearly. The smooth Welsch penalty makes the
 * objective differentiable; at MCP/SCAD kinks the fixed subgradient
 * selection from the penalty module is used, which keeps the iteration
 * deterministic (the unfolded reading of the scheme) but forfeits pointwise
 * convergence when a minimizer sits exactly on a kink.
 *
 * solve_unfolded runs exactly k steps with no termination test, mirroring a
 * k-layer unrolled network.
 */

struct DenoiseProblem {
    ImageGrid y;
    RegularizerHandle reg;
};

struct SolverConfig {
    int max_iters = 500;
    double tol = 1e-8;                // on ||grad|| / max(1, ||y||)
    std::optional<double> step;       // default: 1/(1 + grad_lipschitz)
    std::optional<int> unfold_k;      // fixed-iteration mode: exactly k steps, no early exit
    int keep_every = 0;               // snapshot every m-th iterate; 0 keeps first/last only
};

struct SolverTrace {
    std::vector<double> objective;     // per iteration, including the start point
    std::vector<double> grad_residual; // relative gradient norms, same indexing
    std::vector<std::pair<int, ImageGrid>> iterates_kept;
    int iters_run = 0;
    bool converged = false;
};

double objective(const ImageGrid& x, const DenoiseProblem& p);

// Certified step size 1/(1 + L_g).
double auto_step(const RegularizerHandle& reg);

std::pair<ImageGrid, SolverTrace> solve(const DenoiseProblem& p, const SolverConfig& cfg = {});

// Exactly k gradient steps, deterministic, no termination test.
ImageGrid solve_unfolded(const DenoiseProblem& p, int k);

struct LipschitzPairCheck {
    double output_distance = 0.0;
    double input_distance = 0.0;
    double bound = 0.0; // input_distance / (1 - rho_total) + 1e-6
    bool ok = true;
};

struct LipschitzReport {
    std::vector<LipschitzPairCheck> pairs;
    bool all_ok = true;
};

// Verifies the stability bound ||D(y1) - D(y2)|| <= ||y1 - y2|| / (1 - rho_total)
// with D = solve at tolerance 1e-10.
LipschitzReport denoiser_lipschitz_check(const RegularizerHandle& reg,
                                         const std::vector<std::pair<ImageGrid, ImageGrid>>& pairs);

} // namespace wcr
