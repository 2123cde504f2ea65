#pragma once

#include <vector>

#include "rodqubo/polynomial.hpp"
#include "rodqubo/qubo.hpp"

namespace rodqubo {

enum class ReductionIdentity {
  kKzfd,      ///< a*xyz = min_w a*w*(x + y + z - 2), valid for a < 0
  kIshikawa,  ///< a*xyz = a*(xy + xz + yz) + min_w a*w*(1 - x - y - z), valid for a > 0
};

const char* to_string(ReductionIdentity identity);

struct ReductionEntry {
  Var auxiliary;
  VarSet monomial;
  double coefficient;
  ReductionIdentity identity;
};

using ReductionMap = std::vector<ReductionEntry>;

struct Quadratization {
  QuboProblem qubo;
  ReductionMap reductions;
  VariableRegistry registry;
  std::size_t source_degree = 0;
};

/// Replaces every cubic monomial by a quadratic gadget with one fresh
/// auxiliary variable, appended after the input variables in monomial order.
/// For every input assignment the minimum over the auxiliaries equals the
/// source value. Terms of degree <= 2 are copied unchanged.
///
/// Throws UnsupportedDegreeError for degree > 3.
Quadratization reduce_to_quadratic(const PseudoBooleanPolynomial& p,
                                   const VariableRegistry& inputs);
/// Same, with generic names for `input_dimension` coefficient-bit inputs.
Quadratization reduce_to_quadratic(const PseudoBooleanPolynomial& p,
                                   std::size_t input_dimension);

/// Extends an input assignment with the auxiliary values minimising the
/// reduced objective. Auxiliaries never couple to each other, so each one is
/// set independently from its local field.
Bits complete_auxiliaries(const Quadratization& reduced, std::span<const std::uint8_t> inputs);

}  // namespace rodqubo
