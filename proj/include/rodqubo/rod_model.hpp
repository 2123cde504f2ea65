#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "rodqubo/polynomial.hpp"
#include "rodqubo/quadratization.hpp"
#include "rodqubo/qubo.hpp"

namespace rodqubo {

/// Compound rod hanging from x = 0 under a uniform body force, free at x = L.
struct RodProblem {
  std::vector<double> nodes;           ///< x_1 = 0 < ... < x_{n_e+1} = L
  std::vector<double> youngs_modulus;  ///< per element
  double body_force = 0.0;             ///< force per volume

  static RodProblem uniform(double length, std::size_t n_elements, double youngs_modulus,
                            double body_force);

  std::size_t element_count() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
  double length() const { return nodes.back() - nodes.front(); }
  double element_length(std::size_t e) const { return nodes[e + 1] - nodes[e]; }

  /// Throws ValidationError describing the first violated invariant.
  void validate() const;
};

struct FixedAreas {
  std::vector<double> areas;
};

/// One design bit per element picks A^(1) (bit 0) or A^(2) (bit 1).
struct DesignableAreas {
  double first = 0.0;
  double second = 0.0;
};

using CrossSectionSpec = std::variant<FixedAreas, DesignableAreas>;

bool is_designable(const CrossSectionSpec& spec);
void validate(const CrossSectionSpec& spec, std::size_t n_elements);

/// Unsigned binary fraction on [0, 1]: value = sum_l 2^(l-1) q_l / (2^n - 1),
/// with q_1 the least significant bit.
struct CoefficientEncoding {
  std::size_t bits = 1;

  double step() const;
  /// Largest integer code, 2^bits - 1.
  std::uint64_t max_code() const;
  void validate() const;
};

/// Throws ValidationError when `bits.size() != encoding.bits`.
double decode_coefficient(std::span<const std::uint8_t> bits, const CoefficientEncoding& encoding);
double decode_coefficient(std::span<const std::uint8_t> bits);

/// Variable layout: node-major coefficient bits (node i owns n_q consecutive
/// bits, least significant first), then one design bit per element. The free
/// end carries no bits.
struct RodVariables {
  std::vector<std::vector<Var>> node_bits;  ///< n_e + 1 entries, last one empty
  std::vector<Var> design_bits;             ///< empty for fixed areas
  VariableRegistry registry;

  static RodVariables build(std::size_t n_elements, const CoefficientEncoding& encoding,
                            bool designable);
};

/// Complementary strain energy sum_e dx/(6 E A) (a_i^2 + a_i a_{i+1} + a_{i+1}^2).
PseudoBooleanPolynomial assemble_internal_energy(const RodProblem& rod,
                                                 const CrossSectionSpec& areas,
                                                 const CoefficientEncoding& encoding);

/// Equilibrium penalty (1/n_e) sum_e ((a_{i+1} - a_i)/A_e + dx_e f)^2.
PseudoBooleanPolynomial assemble_penalty(const RodProblem& rod, const CrossSectionSpec& areas,
                                         const CoefficientEncoding& encoding);

struct AssembledProblem {
  RodProblem rod;
  CrossSectionSpec areas;
  CoefficientEncoding encoding;
  double penalty_weight = 0.0;
  RodVariables variables;
  PseudoBooleanPolynomial energy;
  PseudoBooleanPolynomial penalty;
  PseudoBooleanPolynomial objective;  ///< energy + penalty_weight * penalty

  std::size_t input_count() const noexcept { return variables.registry.size(); }
};

AssembledProblem assemble_objective(const RodProblem& rod, const CrossSectionSpec& areas,
                                    const CoefficientEncoding& encoding, double penalty_weight);

/// Reduced form of `assembled.objective`; degree <= 2 objectives pass through.
Quadratization quadratize(const AssembledProblem& assembled);

/// Piecewise-linear force field with the quantities used to judge it.
struct ForceSolution {
  std::vector<double> nodes;
  std::vector<double> nodal_forces;  ///< a_1 .. a_{n_e+1}
  std::vector<double> areas;         ///< per element
  std::vector<double> residuals;     ///< per-element equilibrium residual pi_e
  double energy = 0.0;               ///< complementary strain energy
  std::optional<double> objective;   ///< J, when decoded from an assembled problem
  std::vector<std::uint8_t> design;  ///< chosen design bits (designable problems only)

  /// Linear interpolation of the nodal forces; x outside [x_1, L] is clamped.
  double force_at(double x) const;
};

/// Exact admissible force of a rod with concrete areas:
/// a_i = f * sum_{e >= i} A_e dx_e, zero at the free end.
ForceSolution analytic_force(const RodProblem& rod, std::span<const double> areas);

/// Decodes the input bits of `bits` (auxiliaries, if present, are ignored).
ForceSolution decode_sample(const AssembledProblem& assembled, std::span<const std::uint8_t> bits);

/// Areas selected by the design bits, or the fixed areas.
std::vector<double> decode_areas(const AssembledProblem& assembled,
                                 std::span<const std::uint8_t> bits);

/// Input assignment whose coefficients are the nearest codes to `nodal_forces`
/// (clamped to [0, 1]) and whose design bits are `design` (ignored when fixed).
Bits nearest_encoding(const AssembledProblem& assembled, std::span<const double> nodal_forces,
                      std::span<const std::uint8_t> design = {});

/// Closed-form energy and residuals of given nodal forces on given areas.
double element_energy(double dx, double youngs, double area, double a_left, double a_right);
double element_residual(double dx, double body_force, double area, double a_left,
                        double a_right);

}  // namespace rodqubo
