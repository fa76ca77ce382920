#pragma once

#include <string>

#include "wcr/penalty.hpp"

namespace wcr {

// Writes penalty/derivative/prox samples over [-half_range, half_range] to a
// CSV file with a header row. MCP additionally gets convex_part and
// quadratic_part columns exposing the convex-minus-quadratic decomposition.
// Numbers are shortest-round-trip decimals, so output is reproducible byte
// for byte.
void export_curves(const PenaltySpec& spec, double half_range, int n_points,
                   const std::string& path);

} // namespace wcr
