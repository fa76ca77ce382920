#include "wcr/analysis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wcr/errors.hpp"

namespace wcr {

namespace {

// Evaluate f over xs in parallel; results land at fixed indices so the output
// is independent of thread count.
std::vector<double> evaluate_samples(const std::function<double(double)>& f,
                                     const std::vector<double>& xs,
                                     const char* op) {
    std::vector<double> ys(xs.size());
    const auto n = static_cast<long long>(xs.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) ys[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(ys[i]))
            throw NumericError(std::string(op) + ": non-finite sample at x = " +
                               std::to_string(xs[i]));
    }
    return ys;
}

} // namespace

std::vector<double> grid_points(const GridSpec& grid) {
    if (grid.n_points < 2) throw ParameterError("grid_points: need at least 2 points");
    if (!(grid.x_min < grid.x_max)) throw ParameterError("grid_points: x_min must be < x_max");
    if (grid.spacing == GridSpec::Spacing::logarithmic && !(grid.x_min > 0.0))
        throw ParameterError("grid_points: logarithmic spacing needs x_min > 0");

    std::vector<double> xs(static_cast<std::size_t>(grid.n_points));
    const double n1 = static_cast<double>(grid.n_points - 1);
    if (grid.spacing == GridSpec::Spacing::linear) {
        const double h = (grid.x_max - grid.x_min) / n1;
        for (int i = 0; i < grid.n_points; ++i)
            xs[static_cast<std::size_t>(i)] = grid.x_min + h * static_cast<double>(i);
    } else {
        const double la = std::log(grid.x_min);
        const double lb = std::log(grid.x_max);
        const double h = (lb - la) / n1;
        for (int i = 0; i < grid.n_points; ++i)
            xs[static_cast<std::size_t>(i)] = std::exp(la + h * static_cast<double>(i));
    }
    xs.front() = grid.x_min;
    xs.back() = grid.x_max;
    return xs;
}

GridSpec default_penalty_grid(const PenaltySpec& spec) {
    GridSpec grid;
    grid.x_min = 1e-4 * spec.lambda;
    grid.x_max = spec.kind == PenaltyKind::welsch ? 10.0 * spec.lambda
                                                  : 10.0 * spec.gamma * spec.lambda;
    grid.n_points = 100000;
    grid.spacing = GridSpec::Spacing::logarithmic;
    return grid;
}

ConcavityEstimate estimate_concavity(const std::function<double(double)>& psi_deriv,
                                     const GridSpec& grid, PairMode mode) {
    if (!(grid.x_min > 0.0))
        throw ParameterError("estimate_concavity: grid must satisfy 0 < x_min");
    const std::vector<double> xs = grid_points(grid);
    const std::vector<double> ds = evaluate_samples(psi_deriv, xs, "estimate_concavity");
    const std::size_t n = xs.size();

    double best = -std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    auto consider = [&](std::size_t i, std::size_t j) {
        // (psi'(x2) - psi'(x1)) / (x1 - x2), positive where psi' decreases
        const double q = (ds[j] - ds[i]) / (xs[i] - xs[j]);
        if (q > best) {
            best = q;
            bi = i;
            bj = j;
        }
    };

    if (mode == PairMode::exhaustive) {
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) consider(i, j);
    } else {
        for (std::size_t i = 0; i + 1 < n; ++i) consider(i, i + 1);
        for (std::size_t stride = 2; stride < n; stride *= 2)
            for (std::size_t i = 0; i + stride < n; ++i) consider(i, i + stride);
    }

    ConcavityEstimate est;
    est.kappa = best > 0.0 ? best : 0.0;
    est.witness_x1 = xs[bi];
    est.witness_x2 = xs[bj];
    est.grid = grid;
    return est;
}

ConvexityReport certify_weak_convexity(const std::function<double(double)>& value,
                                       double rho, const GridSpec& grid) {
    const std::vector<double> xs = grid_points(grid);
    const std::size_t n = xs.size();
    auto h = [&](double x) { return value(x) + 0.5 * rho * x * x; };

    std::vector<double> hx = evaluate_samples(h, xs, "certify_weak_convexity");
    std::vector<double> mids(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) mids[i] = 0.5 * (xs[i] + xs[i + 1]);
    std::vector<double> hm = evaluate_samples(h, mids, "certify_weak_convexity");

    // first violation in ascending order
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double chord = 0.5 * (hx[i] + hx[i + 1]);
        if (hm[i] > chord + kMidpointTol) {
            ConvexityReport rep;
            rep.passed = false;
            rep.a = xs[i];
            rep.b = xs[i + 1];
            rep.midpoint_value = hm[i];
            rep.chord_value = chord;
            return rep;
        }
    }
    return ConvexityReport{};
}

double estimate_lipschitz_deriv(const std::function<double(double)>& deriv,
                                const GridSpec& grid) {
    const std::vector<double> xs = grid_points(grid);
    const std::vector<double> ds = evaluate_samples(deriv, xs, "estimate_lipschitz_deriv");
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double q = std::abs(ds[i + 1] - ds[i]) / (xs[i + 1] - xs[i]);
        if (q > best) best = q;
    }
    return best;
}

} // namespace wcr
