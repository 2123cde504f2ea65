#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rodqubo/polynomial.hpp"

namespace rodqubo {

enum class VariableKind { kCoefficientBit, kDesignBit, kAuxiliary };

const char* to_string(VariableKind kind);

/// Names and kinds of the binary variables of a problem.
///
/// Kinds occupy three contiguous index blocks in the order coefficient bits,
/// design bits, auxiliaries. `add` enforces that order.
class VariableRegistry {
 public:
  Var add(VariableKind kind, std::string name);

  std::size_t size() const noexcept { return kinds_.size(); }
  VariableKind kind(Var v) const { return kinds_.at(v); }
  const std::string& name(Var v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t count(VariableKind kind) const noexcept;
  /// Number of non-auxiliary variables.
  std::size_t input_count() const noexcept;

 private:
  std::vector<VariableKind> kinds_;
  std::vector<std::string> names_;
};

/// Quadratic pseudo-Boolean objective
///
///   E(x) = sum_i linear[i] x_i + sum_{i<j} quadratic[(i,j)] x_i x_j + offset.
///
/// Immutable after construction; the constructor builds a neighbour list used
/// by the solvers for O(degree) flip deltas.
class QuboProblem {
 public:
  using PairMap = std::map<std::pair<Var, Var>, double>;

  struct Neighbor {
    Var index;
    double weight;
  };

  QuboProblem() = default;
  QuboProblem(std::size_t dimension, std::vector<double> linear, PairMap quadratic,
              double offset, std::vector<std::string> variable_names = {});

  /// Throws UnsupportedDegreeError for degree > 2.
  static QuboProblem from_polynomial(const PseudoBooleanPolynomial& p, std::size_t dimension,
                                     std::vector<std::string> variable_names = {});

  std::size_t dimension() const noexcept { return linear_.size(); }
  const std::vector<double>& linear() const noexcept { return linear_; }
  const PairMap& quadratic() const noexcept { return quadratic_; }
  double offset() const noexcept { return offset_; }
  const std::vector<std::string>& variable_names() const noexcept { return names_; }
  std::span<const Neighbor> neighbors(Var i) const {
    return {adjacency_.data() + row_start_[i], adjacency_.data() + row_start_[i + 1]};
  }

  double energy(std::span<const std::uint8_t> x) const;
  /// Local field linear_i + sum_j Q_ij x_j; flipping i changes E by (1 - 2 x_i) * field.
  double field(std::span<const std::uint8_t> x, Var i) const;
  double flip_delta(std::span<const std::uint8_t> x, Var i) const {
    return (x[i] ? -1.0 : 1.0) * field(x, i);
  }

  /// Sum of absolute values of all coefficients including the offset.
  double magnitude() const noexcept;

  PseudoBooleanPolynomial to_polynomial() const;
  QuboProblem scaled(double factor) const;

 private:
  void build_adjacency();

  std::vector<double> linear_;
  PairMap quadratic_;
  double offset_ = 0.0;
  std::vector<std::string> names_;
  std::vector<std::size_t> row_start_{0};
  std::vector<Neighbor> adjacency_;
};

/// Nonzero structure as (row, column) entries. Off-diagonal couplings appear
/// in both orientations, nonzero linear terms as (i, i). Sorted row-major.
std::vector<std::pair<Var, Var>> qubo_pattern(const QuboProblem& q);

struct CoefficientStats {
  double max_abs = 0.0;
  double min_abs_nonzero = 0.0;
  double dynamic_range = 0.0;
  std::size_t nonzero_count = 0;
};

/// Extrema over linear and quadratic coefficients (offset excluded).
/// Throws ValidationError when there is no nonzero coefficient.
CoefficientStats coefficient_stats(const QuboProblem& q);

}  // namespace rodqubo
