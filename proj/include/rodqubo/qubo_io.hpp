#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "rodqubo/qubo.hpp"

namespace rodqubo {

/// {"dimension", "linear", "quadratic": [[i, j, v], ...], "offset", "variable_names"}
nlohmann::json qubo_to_json(const QuboProblem& q);
/// Accepts the object above; "variable_names" is optional.
QuboProblem qubo_from_json(const nlohmann::json& j);

/// qbsolv-style text: an optional "c offset <v>" comment, the header
/// "p qubo 0 <maxDiagonals> <nDiagonals> <nElements>", then "i i v" diagonal
/// lines followed by "i j v" (i < j) coupler lines.
void write_qubo_text(std::ostream& os, const QuboProblem& q);
QuboProblem read_qubo_text(std::istream& is);

/// "i,j" rows with a header line, as produced by qubo_pattern().
void write_pattern_csv(std::ostream& os, const QuboProblem& q);

}  // namespace rodqubo
