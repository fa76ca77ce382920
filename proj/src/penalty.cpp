#include "wcr/penalty.hpp"

#include <cmath>
#include <string>

#include "wcr/errors.hpp"

namespace wcr {

namespace {

void require_kind(const PenaltySpec& spec, PenaltyKind kind, const char* op) {
    if (spec.kind != kind)
        throw ParameterError(std::string(op) + ": spec kind is " +
                             penalty_kind_name(spec.kind));
}

} // namespace

PenaltySpec PenaltySpec::mcp(double lambda, double gamma) {
    if (!(lambda > 0.0)) throw ParameterError("mcp: lambda must be > 0");
    if (!(gamma > 1.0)) throw ParameterError("mcp: gamma must be > 1");
    return {PenaltyKind::mcp, lambda, gamma};
}

PenaltySpec PenaltySpec::scad(double lambda, double gamma) {
    if (!(lambda > 0.0)) throw ParameterError("scad: lambda must be > 0");
    if (!(gamma > 2.0)) throw ParameterError("scad: gamma must be > 2");
    return {PenaltyKind::scad, lambda, gamma};
}

PenaltySpec PenaltySpec::welsch(double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("welsch: lambda must be > 0");
    return {PenaltyKind::welsch, lambda, 0.0};
}

double mcp_value(double x, const PenaltySpec& spec) {
    require_kind(spec, PenaltyKind::mcp, "mcp_value");
    const double a = std::abs(x);
    const double knee = spec.gamma * spec.lambda;
    if (a <= knee) return spec.lambda * a - a * a / (2.0 * spec.gamma);
    return spec.gamma * spec.lambda * spec.lambda / 2.0;
}

double scad_value(double x, const PenaltySpec& spec) {
    require_kind(spec, PenaltyKind::scad, "scad_value");
    const double a = std::abs(x);
    const double l = spec.lambda;
    const double g = spec.gamma;
    if (a <= l) return l * a;
    if (a <= g * l) return (2.0 * g * l * a - a * a - l * l) / (2.0 * (g - 1.0));
    return l * l * (g + 1.0) / 2.0;
}

double welsch_value(double x, const PenaltySpec& spec) {
    require_kind(spec, PenaltyKind::welsch, "welsch_value");
    const double l = spec.lambda;
    return 0.5 * l * l * (1.0 - std::exp(-(x * x) / (l * l)));
}

double mcp_convex_part(double x, const PenaltySpec& spec) {
    require_kind(spec, PenaltyKind::mcp, "mcp_convex_part");
    return mcp_value(x, spec) + x * x / (2.0 * spec.gamma);
}

double penalty_value(double x, const PenaltySpec& spec) {
    switch (spec.kind) {
        case PenaltyKind::mcp: return mcp_value(x, spec);
        case PenaltyKind::scad: return scad_value(x, spec);
        case PenaltyKind::welsch: return welsch_value(x, spec);
    }
    throw ParameterError("penalty_value: unknown penalty kind");
}

double penalty_deriv(double x, const PenaltySpec& spec) {
    const double a = std::abs(x);
    const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    const double l = spec.lambda;
    const double g = spec.gamma;
    switch (spec.kind) {
        case PenaltyKind::mcp:
            if (a > g * l) return 0.0;
            return s * (l - a / g);
        case PenaltyKind::scad:
            if (a <= l) return s * l;
            if (a <= g * l) return s * (g * l - a) / (g - 1.0);
            return 0.0;
        case PenaltyKind::welsch:
            return x * std::exp(-(x * x) / (l * l));
    }
    throw ParameterError("penalty_deriv: unknown penalty kind");
}

double penalty_rho(const PenaltySpec& spec) {
    switch (spec.kind) {
        case PenaltyKind::mcp: return 1.0 / spec.gamma;
        case PenaltyKind::scad: return 1.0 / (spec.gamma - 1.0);
        case PenaltyKind::welsch: return 2.0 * std::exp(-1.5);
    }
    throw ParameterError("penalty_rho: unknown penalty kind");
}

std::optional<double> penalty_saturation(const PenaltySpec& spec) {
    const double l = spec.lambda;
    switch (spec.kind) {
        case PenaltyKind::mcp: return spec.gamma * l * l / 2.0;
        case PenaltyKind::scad: return l * l * (spec.gamma + 1.0) / 2.0;
        case PenaltyKind::welsch: return 0.5 * l * l;
    }
    throw ParameterError("penalty_saturation: unknown penalty kind");
}

double penalty_deriv_lipschitz(const PenaltySpec& spec) {
    switch (spec.kind) {
        case PenaltyKind::mcp: return 1.0 / spec.gamma;
        case PenaltyKind::scad: return 1.0 / (spec.gamma - 1.0);
        case PenaltyKind::welsch: return 1.0; // |g''| peaks at the origin, g''(0) = 1
    }
    throw ParameterError("penalty_deriv_lipschitz: unknown penalty kind");
}

PenaltyCalculus penalty_calculus(const PenaltySpec& spec) {
    PenaltyCalculus calc;
    calc.value = [spec](double x) { return penalty_value(x, spec); };
    calc.deriv = [spec](double x) { return penalty_deriv(x, spec); };
    calc.rho = penalty_rho(spec);
    calc.saturation = penalty_saturation(spec);
    return calc;
}

const char* penalty_kind_name(PenaltyKind kind) {
    switch (kind) {
        case PenaltyKind::mcp: return "mcp";
        case PenaltyKind::scad: return "scad";
        case PenaltyKind::welsch: return "welsch";
    }
    return "unknown";
}

} // namespace wcr
