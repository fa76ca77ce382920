#include "wcr/curves.hpp"

#include <fstream>

#include "wcr/errors.hpp"
#include "wcr/format.hpp"
#include "wcr/prox.hpp"

namespace wcr {

void export_curves(const PenaltySpec& spec, double half_range, int n_points,
                   const std::string& path) {
    if (n_points < 2) throw ParameterError("export_curves: need at least 2 points");
    if (!(half_range > 0.0)) throw ParameterError("export_curves: range must be > 0");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("export_curves: cannot open '" + path + "'");

    const bool is_mcp = spec.kind == PenaltyKind::mcp;
    out << "x,value,deriv,prox";
    if (is_mcp) out << ",convex_part,quadratic_part";
    out << "\n";

    for (int i = 0; i < n_points; ++i) {
        // hits the endpoints and (for odd n) zero exactly
        const double x =
            half_range * (2.0 * static_cast<double>(i) / static_cast<double>(n_points - 1) - 1.0);
        out << format_double(x) << "," << format_double(penalty_value(x, spec)) << ","
            << format_double(penalty_deriv(x, spec)) << ","
            << format_double(prox_penalty({x, spec, 1.0}));
        if (is_mcp)
            out << "," << format_double(mcp_convex_part(x, spec)) << ","
                << format_double(x * x / (2.0 * spec.gamma));
        out << "\n";
    }
    if (!out) throw IoError("export_curves: write failed for '" + path + "'");
}

} // namespace wcr
