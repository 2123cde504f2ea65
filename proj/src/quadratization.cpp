#include "rodqubo/quadratization.hpp"

#include <algorithm>

#include "rodqubo/errors.hpp"

namespace rodqubo {

const char* to_string(ReductionIdentity identity) {
  switch (identity) {
    case ReductionIdentity::kKzfd: return "KZFD";
    case ReductionIdentity::kIshikawa: return "Ishikawa";
  }
  return "unknown";
}

Quadratization reduce_to_quadratic(const PseudoBooleanPolynomial& p,
                                   const VariableRegistry& inputs) {
  const std::size_t degree = p.degree();
  if (degree > 3) {
    throw UnsupportedDegreeError("cannot quadratize a polynomial of degree " +
                                 std::to_string(degree) + " (at most cubic supported)");
  }
  if (p.variable_bound() > inputs.size()) {
    throw ValidationError("polynomial uses variable " + std::to_string(p.variable_bound() - 1) +
                          " outside the registry of size " + std::to_string(inputs.size()));
  }

  Quadratization out;
  out.registry = inputs;
  out.source_degree = degree;

  PseudoBooleanPolynomial quadratic(p.offset());
  for (const auto& [vars, a] : p.terms()) {
    if (vars.size() <= 2) {
      quadratic.add_term(vars, a);
      continue;
    }
    const Var w = out.registry.add(VariableKind::kAuxiliary,
                                   "aux" + std::to_string(out.reductions.size()));
    const Var x = vars[0], y = vars[1], z = vars[2];
    if (a < 0.0) {
      quadratic.add_term({w, x}, a);
      quadratic.add_term({w, y}, a);
      quadratic.add_term({w, z}, a);
      quadratic.add_term({w}, -2.0 * a);
      out.reductions.push_back({w, vars, a, ReductionIdentity::kKzfd});
    } else {
      quadratic.add_term({x, y}, a);
      quadratic.add_term({x, z}, a);
      quadratic.add_term({y, z}, a);
      quadratic.add_term({w}, a);
      quadratic.add_term({w, x}, -a);
      quadratic.add_term({w, y}, -a);
      quadratic.add_term({w, z}, -a);
      out.reductions.push_back({w, vars, a, ReductionIdentity::kIshikawa});
    }
  }
  out.qubo = QuboProblem::from_polynomial(quadratic, out.registry.size(), out.registry.names());
  return out;
}

Quadratization reduce_to_quadratic(const PseudoBooleanPolynomial& p,
                                   std::size_t input_dimension) {
  VariableRegistry registry;
  for (std::size_t i = 0; i < input_dimension; ++i) {
    registry.add(VariableKind::kCoefficientBit, "x" + std::to_string(i));
  }
  return reduce_to_quadratic(p, registry);
}

Bits complete_auxiliaries(const Quadratization& reduced, std::span<const std::uint8_t> inputs) {
  const std::size_t n_inputs = reduced.registry.input_count();
  if (inputs.size() < n_inputs) {
    throw MissingVariableError(inputs.size(), "input assignment of length " +
                                                  std::to_string(inputs.size()) + " but " +
                                                  std::to_string(n_inputs) + " inputs required");
  }
  Bits x(reduced.qubo.dimension(), 0);
  std::copy_n(inputs.begin(), n_inputs, x.begin());
  for (const auto& entry : reduced.reductions) {
    x[entry.auxiliary] = reduced.qubo.field(x, entry.auxiliary) < 0.0 ? 1 : 0;
  }
  return x;
}

}  // namespace rodqubo
