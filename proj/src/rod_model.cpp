#include "rodqubo/rod_model.hpp"

#include <algorithm>
#include <cmath>

#include "rodqubo/errors.hpp"

namespace rodqubo {

RodProblem RodProblem::uniform(double length, std::size_t n_elements, double youngs_modulus,
                               double body_force) {
  if (n_elements == 0) throw ValidationError("rod needs at least one element");
  RodProblem rod;
  rod.nodes.resize(n_elements + 1);
  for (std::size_t i = 0; i <= n_elements; ++i) {
    rod.nodes[i] = length * static_cast<double>(i) / static_cast<double>(n_elements);
  }
  rod.nodes.back() = length;
  rod.youngs_modulus.assign(n_elements, youngs_modulus);
  rod.body_force = body_force;
  return rod;
}

void RodProblem::validate() const {
  if (nodes.size() < 2) throw ValidationError("rod needs at least one element");
  if (nodes.front() != 0.0) throw ValidationError("first node must be at x = 0");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i + 1] > nodes[i])) {
      throw ValidationError("node coordinates must be strictly increasing");
    }
  }
  if (youngs_modulus.size() != element_count()) {
    throw ValidationError("expected " + std::to_string(element_count()) +
                          " Young's moduli, got " + std::to_string(youngs_modulus.size()));
  }
  for (double E : youngs_modulus) {
    if (!(E > 0.0)) throw ValidationError("Young's modulus must be positive");
  }
  if (!(body_force > 0.0)) throw ValidationError("body force density must be positive");
}

bool is_designable(const CrossSectionSpec& spec) {
  return std::holds_alternative<DesignableAreas>(spec);
}

void validate(const CrossSectionSpec& spec, std::size_t n_elements) {
  if (const auto* fixed = std::get_if<FixedAreas>(&spec)) {
    if (fixed->areas.size() != n_elements) {
      throw ValidationError("expected " + std::to_string(n_elements) + " fixed areas, got " +
                            std::to_string(fixed->areas.size()));
    }
    for (double a : fixed->areas) {
      if (!(a > 0.0)) throw ValidationError("cross-sectional areas must be positive");
    }
  } else {
    const auto& d = std::get<DesignableAreas>(spec);
    if (!(d.first > 0.0) || !(d.second > 0.0)) {
      throw ValidationError("area choices must be positive");
    }
    if (d.first == d.second) throw ValidationError("area choices must differ");
  }
}

double CoefficientEncoding::step() const { return 1.0 / static_cast<double>(max_code()); }

std::uint64_t CoefficientEncoding::max_code() const {
  return (std::uint64_t{1} << bits) - 1;
}

void CoefficientEncoding::validate() const {
  if (bits < 1 || bits > 52) throw ValidationError("encoding bits must be in [1, 52]");
}

double decode_coefficient(std::span<const std::uint8_t> bits, const CoefficientEncoding& encoding) {
  if (bits.size() != encoding.bits) {
    throw ValidationError("expected " + std::to_string(encoding.bits) + " coefficient bits, got " +
                          std::to_string(bits.size()));
  }
  std::uint64_t code = 0;
  for (std::size_t l = 0; l < bits.size(); ++l) {
    if (bits[l]) code |= std::uint64_t{1} << l;
  }
  return static_cast<double>(code) / static_cast<double>(encoding.max_code());
}

double decode_coefficient(std::span<const std::uint8_t> bits) {
  return decode_coefficient(bits, CoefficientEncoding{bits.size()});
}

RodVariables RodVariables::build(std::size_t n_elements, const CoefficientEncoding& encoding,
                                 bool designable) {
  RodVariables v;
  v.node_bits.resize(n_elements + 1);
  for (std::size_t i = 0; i < n_elements; ++i) {
    for (std::size_t l = 0; l < encoding.bits; ++l) {
      v.node_bits[i].push_back(v.registry.add(
          VariableKind::kCoefficientBit,
          "a" + std::to_string(i + 1) + "_" + std::to_string(l + 1)));
    }
  }
  if (designable) {
    for (std::size_t e = 0; e < n_elements; ++e) {
      v.design_bits.push_back(
          v.registry.add(VariableKind::kDesignBit, "A" + std::to_string(e + 1)));
    }
  }
  return v;
}

namespace {

void validate_inputs(const RodProblem& rod, const CrossSectionSpec& areas,
                     const CoefficientEncoding& encoding) {
  rod.validate();
  validate(areas, rod.element_count());
  encoding.validate();
}

PseudoBooleanPolynomial nodal_coefficient(const RodVariables& vars, std::size_t node,
                                          const CoefficientEncoding& encoding) {
  PseudoBooleanPolynomial a;
  const double step = encoding.step();
  for (std::size_t l = 0; l < vars.node_bits[node].size(); ++l) {
    a.add_term({vars.node_bits[node][l]}, std::ldexp(step, static_cast<int>(l)));
  }
  return a;
}

PseudoBooleanPolynomial inverse_area(const RodVariables& vars, const CrossSectionSpec& areas,
                                     std::size_t e) {
  if (const auto* fixed = std::get_if<FixedAreas>(&areas)) {
    return PseudoBooleanPolynomial(1.0 / fixed->areas[e]);
  }
  const auto& d = std::get<DesignableAreas>(areas);
  PseudoBooleanPolynomial inv(1.0 / d.first);
  inv.add_term({vars.design_bits[e]}, 1.0 / d.second - 1.0 / d.first);
  return inv;
}

PseudoBooleanPolynomial energy_polynomial(const RodProblem& rod, const CrossSectionSpec& areas,
                                          const CoefficientEncoding& encoding,
                                          const RodVariables& vars) {
  PseudoBooleanPolynomial total;
  for (std::size_t e = 0; e < rod.element_count(); ++e) {
    const auto left = nodal_coefficient(vars, e, encoding);
    const auto right = nodal_coefficient(vars, e + 1, encoding);
    const auto quadratic_form = left * left + left * right + right * right;
    const double scale = rod.element_length(e) / (6.0 * rod.youngs_modulus[e]);
    total += inverse_area(vars, areas, e) * (scale * quadratic_form);
  }
  return total;
}

PseudoBooleanPolynomial penalty_polynomial(const RodProblem& rod, const CrossSectionSpec& areas,
                                           const CoefficientEncoding& encoding,
                                           const RodVariables& vars) {
  PseudoBooleanPolynomial total;
  const auto n_e = rod.element_count();
  for (std::size_t e = 0; e < n_e; ++e) {
    auto residual = inverse_area(vars, areas, e) * (nodal_coefficient(vars, e + 1, encoding) -
                                                     nodal_coefficient(vars, e, encoding));
    residual.add_constant(rod.element_length(e) * rod.body_force);
    total += residual * residual;
  }
  total *= 1.0 / static_cast<double>(n_e);
  return total;
}

}  // namespace

PseudoBooleanPolynomial assemble_internal_energy(const RodProblem& rod,
                                                 const CrossSectionSpec& areas,
                                                 const CoefficientEncoding& encoding) {
  validate_inputs(rod, areas, encoding);
  const auto vars = RodVariables::build(rod.element_count(), encoding, is_designable(areas));
  return energy_polynomial(rod, areas, encoding, vars);
}

PseudoBooleanPolynomial assemble_penalty(const RodProblem& rod, const CrossSectionSpec& areas,
                                         const CoefficientEncoding& encoding) {
  validate_inputs(rod, areas, encoding);
  const auto vars = RodVariables::build(rod.element_count(), encoding, is_designable(areas));
  return penalty_polynomial(rod, areas, encoding, vars);
}

AssembledProblem assemble_objective(const RodProblem& rod, const CrossSectionSpec& areas,
                                    const CoefficientEncoding& encoding, double penalty_weight) {
  validate_inputs(rod, areas, encoding);
  if (!(penalty_weight >= 0.0) || !std::isfinite(penalty_weight)) {
    throw ValidationError("penalty weight must be a finite non-negative number");
  }
  AssembledProblem out{rod, areas, encoding, penalty_weight,
                       RodVariables::build(rod.element_count(), encoding, is_designable(areas)),
                       {}, {}, {}};
  out.energy = energy_polynomial(rod, areas, encoding, out.variables);
  out.penalty = penalty_polynomial(rod, areas, encoding, out.variables);
  out.objective = out.energy + penalty_weight * out.penalty;
  return out;
}

Quadratization quadratize(const AssembledProblem& assembled) {
  return reduce_to_quadratic(assembled.objective, assembled.variables.registry);
}

double ForceSolution::force_at(double x) const {
  if (x <= nodes.front()) return nodal_forces.front();
  if (x >= nodes.back()) return nodal_forces.back();
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  const auto i = static_cast<std::size_t>(it - nodes.begin()) - 1;
  const double t = (x - nodes[i]) / (nodes[i + 1] - nodes[i]);
  return (1.0 - t) * nodal_forces[i] + t * nodal_forces[i + 1];
}

double element_energy(double dx, double youngs, double area, double a_left, double a_right) {
  return dx / (6.0 * youngs * area) *
         (a_left * a_left + a_left * a_right + a_right * a_right);
}

double element_residual(double dx, double body_force, double area, double a_left,
                        double a_right) {
  return (a_right - a_left) / area + dx * body_force;
}

namespace {

void fill_measures(const RodProblem& rod, ForceSolution& s) {
  const auto n_e = rod.element_count();
  s.residuals.resize(n_e);
  s.energy = 0.0;
  for (std::size_t e = 0; e < n_e; ++e) {
    const double dx = rod.element_length(e);
    s.energy += element_energy(dx, rod.youngs_modulus[e], s.areas[e], s.nodal_forces[e],
                               s.nodal_forces[e + 1]);
    s.residuals[e] =
        element_residual(dx, rod.body_force, s.areas[e], s.nodal_forces[e], s.nodal_forces[e + 1]);
  }
}

}  // namespace

ForceSolution analytic_force(const RodProblem& rod, std::span<const double> areas) {
  rod.validate();
  const auto n_e = rod.element_count();
  if (areas.size() != n_e) throw ValidationError("one area per element required");
  ForceSolution s;
  s.nodes = rod.nodes;
  s.areas.assign(areas.begin(), areas.end());
  s.nodal_forces.assign(n_e + 1, 0.0);
  for (std::size_t e = n_e; e-- > 0;) {
    s.nodal_forces[e] = s.nodal_forces[e + 1] + rod.body_force * areas[e] * rod.element_length(e);
  }
  fill_measures(rod, s);
  return s;
}

std::vector<double> decode_areas(const AssembledProblem& assembled,
                                 std::span<const std::uint8_t> bits) {
  if (const auto* fixed = std::get_if<FixedAreas>(&assembled.areas)) return fixed->areas;
  const auto& d = std::get<DesignableAreas>(assembled.areas);
  std::vector<double> out;
  for (Var v : assembled.variables.design_bits) {
    if (v >= bits.size()) {
      throw MissingVariableError(v, "assignment does not cover design bit " + std::to_string(v));
    }
    out.push_back(bits[v] ? d.second : d.first);
  }
  return out;
}

ForceSolution decode_sample(const AssembledProblem& assembled, std::span<const std::uint8_t> bits) {
  const auto n_inputs = assembled.input_count();
  if (bits.size() < n_inputs) {
    throw MissingVariableError(bits.size(), "assignment of length " + std::to_string(bits.size()) +
                                                " does not cover the " +
                                                std::to_string(n_inputs) + " input bits");
  }
  const auto& rod = assembled.rod;
  ForceSolution s;
  s.nodes = rod.nodes;
  s.nodal_forces.assign(rod.element_count() + 1, 0.0);
  Bits node_bits(assembled.encoding.bits);
  for (std::size_t i = 0; i < rod.element_count(); ++i) {
    const auto& vars = assembled.variables.node_bits[i];
    for (std::size_t l = 0; l < vars.size(); ++l) node_bits[l] = bits[vars[l]];
    s.nodal_forces[i] = decode_coefficient(node_bits, assembled.encoding);
  }
  s.areas = decode_areas(assembled, bits);
  for (Var v : assembled.variables.design_bits) s.design.push_back(bits[v]);
  fill_measures(rod, s);
  s.objective = assembled.objective.evaluate(bits.first(n_inputs));
  return s;
}

Bits nearest_encoding(const AssembledProblem& assembled, std::span<const double> nodal_forces,
                      std::span<const std::uint8_t> design) {
  const auto n_e = assembled.rod.element_count();
  if (nodal_forces.size() < n_e) throw ValidationError("one nodal force per node required");
  Bits bits(assembled.input_count(), 0);
  const double max_code = static_cast<double>(assembled.encoding.max_code());
  for (std::size_t i = 0; i < n_e; ++i) {
    const double clamped = std::clamp(nodal_forces[i], 0.0, 1.0);
    const auto code = static_cast<std::uint64_t>(std::llround(clamped * max_code));
    const auto& vars = assembled.variables.node_bits[i];
    for (std::size_t l = 0; l < vars.size(); ++l) bits[vars[l]] = (code >> l) & 1U;
  }
  const auto& design_bits = assembled.variables.design_bits;
  if (!design_bits.empty()) {
    if (design.size() != design_bits.size()) {
      throw ValidationError("one design bit per element required");
    }
    for (std::size_t e = 0; e < design_bits.size(); ++e) bits[design_bits[e]] = design[e];
  }
  return bits;
}

}  // namespace rodqubo
