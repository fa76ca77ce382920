#include "wcr/prox.hpp"

#include <cmath>
#include <limits>

#include "wcr/errors.hpp"

namespace wcr {

namespace {

void validate_query(const ProxQuery& q, const char* op) {
    if (!(q.step > 0.0)) throw ParameterError(std::string(op) + ": step must be > 0");
    if (!(q.step * penalty_rho(q.spec) < 1.0))
        throw ParameterError(std::string(op) +
                             ": step * rho must be < 1 (scalar objective nonconvex)");
    if (!std::isfinite(q.y)) throw ParameterError(std::string(op) + ": y must be finite");
}

double sign_of(double y) { return y > 0.0 ? 1.0 : (y < 0.0 ? -1.0 : 0.0); }

// One-sided derivative limit psi'(0+) of the radial profile.
double deriv_at_origin_plus(const PenaltySpec& spec) {
    switch (spec.kind) {
        case PenaltyKind::mcp:
        case PenaltyKind::scad: return spec.lambda;
        case PenaltyKind::welsch: return 0.0;
    }
    return 0.0;
}

// psi'' on the open smooth pieces; the value at a knot is immaterial for the
// safeguarded Newton step.
double second_deriv(double x, const PenaltySpec& spec) {
    const double l = spec.lambda;
    const double g = spec.gamma;
    switch (spec.kind) {
        case PenaltyKind::mcp: return x <= g * l ? -1.0 / g : 0.0;
        case PenaltyKind::scad:
            if (x <= l) return 0.0;
            if (x <= g * l) return -1.0 / (g - 1.0);
            return 0.0;
        case PenaltyKind::welsch: {
            const double t = (x * x) / (l * l);
            return std::exp(-t) * (1.0 - 2.0 * t);
        }
    }
    return 0.0;
}

// Root of phi(x) = x - a + step * psi'(x) on [0, a] for a = |y| > 0.
// phi is strictly increasing (slope >= 1 - step*rho > 0), so Newton with a
// bisection safeguard converges; the bracket is never lost.
double prox_newton(const ProxQuery& q, const char* op) {
    const double a = std::abs(q.y);
    if (a == 0.0) return 0.0;
    if (a <= q.step * deriv_at_origin_plus(q.spec)) return 0.0;

    auto phi = [&](double x) { return x - a + q.step * penalty_deriv(x, q.spec); };

    double lo = 0.0;       // phi(lo) < 0
    double hi = a;         // phi(hi) >= 0
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = phi(x);
        if (std::abs(f) <= 1e-12 * std::max(1.0, a)) return sign_of(q.y) * x;
        if (f < 0.0)
            lo = x;
        else
            hi = x;
        const double fp = 1.0 + q.step * second_deriv(x, q.spec);
        double next = fp > 0.0 ? x - f / fp : lo;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        x = next;
    }
    throw NumericError(std::string(op) + ": Newton did not converge in 100 iterations");
}

} // namespace

double prox_mcp(const ProxQuery& q) {
    if (q.spec.kind != PenaltyKind::mcp) throw ParameterError("prox_mcp: spec kind mismatch");
    validate_query(q, "prox_mcp");

    PenaltySpec spec = q.spec;
    if (q.step != 1.0) {
        // exact rescaling; the knot gamma*lambda is invariant under it
        const double l = q.step * spec.lambda;
        const double g = spec.gamma / q.step;
        if (!(g > 1.0)) return prox_newton(q, "prox_mcp");
        spec = PenaltySpec::mcp(l, g);
    }
    const double a = std::abs(q.y);
    const double l = spec.lambda;
    const double g = spec.gamma;
    if (a <= l) return 0.0;
    if (a <= g * l) return sign_of(q.y) * g * (a - l) / (g - 1.0);
    return q.y;
}

double prox_scad(const ProxQuery& q) {
    if (q.spec.kind != PenaltyKind::scad) throw ParameterError("prox_scad: spec kind mismatch");
    validate_query(q, "prox_scad");
    if (q.step != 1.0) return prox_newton(q, "prox_scad");

    const double a = std::abs(q.y);
    const double l = q.spec.lambda;
    const double g = q.spec.gamma;
    if (a <= 2.0 * l) return sign_of(q.y) * std::max(a - l, 0.0);
    if (a <= g * l) return sign_of(q.y) * ((g - 1.0) * a - g * l) / (g - 2.0);
    return q.y;
}

double prox_welsch(const ProxQuery& q) {
    if (q.spec.kind != PenaltyKind::welsch)
        throw ParameterError("prox_welsch: spec kind mismatch");
    validate_query(q, "prox_welsch");
    return prox_newton(q, "prox_welsch");
}

double prox_penalty(const ProxQuery& q) {
    switch (q.spec.kind) {
        case PenaltyKind::mcp: return prox_mcp(q);
        case PenaltyKind::scad: return prox_scad(q);
        case PenaltyKind::welsch: return prox_welsch(q);
    }
    throw ParameterError("prox_penalty: unknown penalty kind");
}

double prox_oracle(const ProxQuery& q, double x_min, double x_max, int n) {
    validate_query(q, "prox_oracle");
    const double a = std::abs(q.y);
    if (!(x_min <= -a && x_max >= a))
        throw ParameterError("prox_oracle: [x_min, x_max] must cover [-|y|, |y|]");
    if (n < 2) throw ParameterError("prox_oracle: need at least 2 grid points");

    auto objective = [&](double x) {
        const double d = x - q.y;
        return 0.5 * d * d + q.step * penalty_value(x, q.spec);
    };

    const double h = (x_max - x_min) / static_cast<double>(n - 1);
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < n; ++i) {
        const double x = x_min + h * static_cast<double>(i);
        const double v = objective(x);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }

    // ternary search inside the winning cell; the objective is strictly
    // convex under step*rho < 1
    double lo = x_min + h * static_cast<double>(best_i > 0 ? best_i - 1 : 0);
    double hi = x_min + h * static_cast<double>(best_i + 1 < n ? best_i + 1 : n - 1);
    for (int it = 0; it < 240 && hi - lo > 0.0; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (objective(m1) <= objective(m2))
            hi = m2;
        else
            lo = m1;
    }
    return 0.5 * (lo + hi);
}

} // namespace wcr
