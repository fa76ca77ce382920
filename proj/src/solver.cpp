#include "wcr/solver.hpp"

#include <cmath>

#include "wcr/errors.hpp"

namespace wcr {

namespace {

void validate_problem(const DenoiseProblem& p, const char* op) {
    if (p.y.width != p.reg.width || p.y.height != p.reg.height)
        throw ShapeError(std::string(op) + ": observation shape does not match regularizer");
    if (!(p.reg.rho_total < 1.0))
        throw ParameterError(std::string(op) + ": rho_total must be < 1");
}

// grad F(x) = (x - y) + reg_grad(x)
ImageGrid full_gradient(const ImageGrid& x, const DenoiseProblem& p) {
    ImageGrid g = reg_grad(x, p.reg);
    const long long n = static_cast<long long>(g.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        auto idx = static_cast<std::size_t>(i);
        g.samples[idx] += x.samples[idx] - p.y.samples[idx];
    }
    return g;
}

} // namespace

double objective(const ImageGrid& x, const DenoiseProblem& p) {
    require_same_shape(x, p.y, "objective");
    ImageGrid diff(x.width, x.height);
    const long long n = static_cast<long long>(x.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        auto idx = static_cast<std::size_t>(i);
        diff.samples[idx] = p.y.samples[idx] - x.samples[idx];
    }
    return 0.5 * det_squared_norm(diff) + reg_value(x, p.reg);
}

double auto_step(const RegularizerHandle& reg) { return 1.0 / (1.0 + reg.grad_lipschitz); }

std::pair<ImageGrid, SolverTrace> solve(const DenoiseProblem& p, const SolverConfig& cfg) {
    validate_problem(p, "solve");
    if (cfg.max_iters < 0) throw ParameterError("solve: max_iters must be >= 0");
    if (!(cfg.tol > 0.0)) throw ParameterError("solve: tol must be > 0");
    if (cfg.unfold_k && *cfg.unfold_k < 0)
        throw ParameterError("solve: unfold_k must be >= 0");
    const double alpha = cfg.step.value_or(auto_step(p.reg));
    if (!(alpha > 0.0)) throw ParameterError("solve: step must be > 0");

    const bool fixed_mode = cfg.unfold_k.has_value();
    const int iter_budget = fixed_mode ? *cfg.unfold_k : cfg.max_iters;
    const double y_scale = std::max(1.0, std::sqrt(det_squared_norm(p.y)));
    const long long n = static_cast<long long>(p.y.size());

    SolverTrace trace;
    ImageGrid x = p.y;
    ImageGrid grad = full_gradient(x, p);

    auto record = [&](int iter, const ImageGrid& xi, const ImageGrid& gi) {
        const double obj = objective(xi, p);
        if (!std::isfinite(obj)) throw NumericError("solve: objective became non-finite");
        trace.objective.push_back(obj);
        trace.grad_residual.push_back(std::sqrt(det_squared_norm(gi)) / y_scale);
        if (iter == 0 || (cfg.keep_every > 0 && iter % cfg.keep_every == 0))
            trace.iterates_kept.emplace_back(iter, xi);
    };

    record(0, x, grad);
    bool done = !fixed_mode && trace.grad_residual.back() <= cfg.tol;

    int iter = 0;
    while (!done && iter < iter_budget) {
        ++iter;
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) {
            auto idx = static_cast<std::size_t>(i);
            x.samples[idx] -= alpha * grad.samples[idx];
        }
        grad = full_gradient(x, p);
        record(iter, x, grad);
        done = !fixed_mode && trace.grad_residual.back() <= cfg.tol;
    }
    trace.iters_run = iter;
    trace.converged = trace.grad_residual.back() <= cfg.tol;
    if (trace.iterates_kept.empty() || trace.iterates_kept.back().first != iter)
        trace.iterates_kept.emplace_back(iter, x);
    return {std::move(x), std::move(trace)};
}

ImageGrid solve_unfolded(const DenoiseProblem& p, int k) {
    validate_problem(p, "solve_unfolded");
    if (k < 0) throw ParameterError("solve_unfolded: k must be >= 0");
    const double alpha = auto_step(p.reg);
    const long long n = static_cast<long long>(p.y.size());

    ImageGrid x = p.y;
    for (int t = 0; t < k; ++t) {
        const ImageGrid grad = full_gradient(x, p);
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) {
            auto idx = static_cast<std::size_t>(i);
            x.samples[idx] -= alpha * grad.samples[idx];
        }
    }
    return x;
}

LipschitzReport denoiser_lipschitz_check(
    const RegularizerHandle& reg,
    const std::vector<std::pair<ImageGrid, ImageGrid>>& pairs) {
    LipschitzReport report;
    SolverConfig cfg;
    cfg.tol = 1e-10;
    cfg.max_iters = 100000;
    for (const auto& [y1, y2] : pairs) {
        require_same_shape(y1, y2, "denoiser_lipschitz_check");
        const ImageGrid d1 = solve({y1, reg}, cfg).first;
        const ImageGrid d2 = solve({y2, reg}, cfg).first;

        ImageGrid out_diff(y1.width, y1.height);
        ImageGrid in_diff(y1.width, y1.height);
        for (std::size_t i = 0; i < y1.size(); ++i) {
            out_diff.samples[i] = d1.samples[i] - d2.samples[i];
            in_diff.samples[i] = y1.samples[i] - y2.samples[i];
        }
        LipschitzPairCheck check;
        check.output_distance = std::sqrt(det_squared_norm(out_diff));
        check.input_distance = std::sqrt(det_squared_norm(in_diff));
        check.bound = check.input_distance / (1.0 - reg.rho_total) + 1e-6;
        check.ok = check.output_distance <= check.bound;
        report.all_ok = report.all_ok && check.ok;
        report.pairs.push_back(check);
    }
    return report;
}

} // namespace wcr
