#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace rodqubo {

using Var = std::uint32_t;
using Bits = std::vector<std::uint8_t>;

/// Sorted, duplicate-free list of variables forming one product term.
using VarSet = std::vector<Var>;

/// Coefficients with magnitude below this are treated as exact zeros.
inline constexpr double kZeroThreshold = 1e-12;

/// Multilinear polynomial over binary variables.
///
/// Stored in canonical form: every term has a nonempty, strictly increasing
/// variable set and a coefficient with |c| >= kZeroThreshold. The constant
/// part lives in `offset()`. Because variables are binary, x*x = x is applied
/// whenever terms are multiplied.
class PseudoBooleanPolynomial {
 public:
  using TermMap = std::map<VarSet, double>;

  PseudoBooleanPolynomial() = default;
  explicit PseudoBooleanPolynomial(double constant) : offset_(constant) {}

  static PseudoBooleanPolynomial variable(Var v, double coefficient = 1.0);
  static PseudoBooleanPolynomial monomial(VarSet vars, double coefficient);

  /// Adds `coefficient * prod(vars)`. `vars` may be unsorted or contain
  /// repeats; it is canonicalized first.
  void add_term(VarSet vars, double coefficient);
  void add_constant(double c) { offset_ += c; }

  const TermMap& terms() const noexcept { return terms_; }
  double offset() const noexcept { return offset_; }
  std::size_t degree() const noexcept;
  bool is_zero() const noexcept { return terms_.empty() && offset_ == 0.0; }

  /// One past the largest variable index used, 0 when constant.
  std::size_t variable_bound() const noexcept;

  /// Throws MissingVariableError when `x` is too short for some term.
  double evaluate(std::span<const std::uint8_t> x) const;

  PseudoBooleanPolynomial& operator+=(const PseudoBooleanPolynomial& other);
  PseudoBooleanPolynomial& operator-=(const PseudoBooleanPolynomial& other);
  PseudoBooleanPolynomial& operator*=(double scale);

  friend PseudoBooleanPolynomial operator+(PseudoBooleanPolynomial a,
                                           const PseudoBooleanPolynomial& b) {
    return a += b;
  }
  friend PseudoBooleanPolynomial operator-(PseudoBooleanPolynomial a,
                                           const PseudoBooleanPolynomial& b) {
    return a -= b;
  }
  friend PseudoBooleanPolynomial operator*(PseudoBooleanPolynomial a, double s) {
    return a *= s;
  }
  friend PseudoBooleanPolynomial operator*(double s, PseudoBooleanPolynomial a) {
    return a *= s;
  }
  friend PseudoBooleanPolynomial operator*(const PseudoBooleanPolynomial& a,
                                           const PseudoBooleanPolynomial& b);

  /// Coefficient-wise equality up to `tolerance` (absolute).
  bool approx_equal(const PseudoBooleanPolynomial& other,
                    double tolerance = 1e-12) const;

  std::string to_string() const;

 private:
  void accumulate(const VarSet& canonical_vars, double coefficient);

  TermMap terms_;
  double offset_ = 0.0;
};

PseudoBooleanPolynomial add(const PseudoBooleanPolynomial& p,
                            const PseudoBooleanPolynomial& q);
PseudoBooleanPolynomial multiply(const PseudoBooleanPolynomial& p,
                                 const PseudoBooleanPolynomial& q);

}  // namespace rodqubo
