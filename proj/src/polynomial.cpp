#include "rodqubo/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rodqubo/errors.hpp"

namespace rodqubo {

namespace {

VarSet canonicalize(VarSet vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

VarSet merge_sets(const VarSet& a, const VarSet& b) {
  VarSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

PseudoBooleanPolynomial PseudoBooleanPolynomial::variable(Var v, double coefficient) {
  PseudoBooleanPolynomial p;
  p.add_term({v}, coefficient);
  return p;
}

PseudoBooleanPolynomial PseudoBooleanPolynomial::monomial(VarSet vars, double coefficient) {
  PseudoBooleanPolynomial p;
  p.add_term(std::move(vars), coefficient);
  return p;
}

void PseudoBooleanPolynomial::add_term(VarSet vars, double coefficient) {
  accumulate(canonicalize(std::move(vars)), coefficient);
}

void PseudoBooleanPolynomial::accumulate(const VarSet& vars, double coefficient) {
  if (vars.empty()) {
    offset_ += coefficient;
    return;
  }
  auto [it, inserted] = terms_.try_emplace(vars, coefficient);
  if (!inserted) it->second += coefficient;
  if (std::abs(it->second) < kZeroThreshold) terms_.erase(it);
}

std::size_t PseudoBooleanPolynomial::degree() const noexcept {
  std::size_t d = 0;
  for (const auto& [vars, c] : terms_) d = std::max(d, vars.size());
  return d;
}

std::size_t PseudoBooleanPolynomial::variable_bound() const noexcept {
  std::size_t bound = 0;
  for (const auto& [vars, c] : terms_) bound = std::max<std::size_t>(bound, vars.back() + 1);
  return bound;
}

double PseudoBooleanPolynomial::evaluate(std::span<const std::uint8_t> x) const {
  double value = offset_;
  for (const auto& [vars, c] : terms_) {
    if (vars.back() >= x.size()) {
      throw MissingVariableError(vars.back(), "assignment of length " + std::to_string(x.size()) +
                                                  " does not cover variable " +
                                                  std::to_string(vars.back()));
    }
    bool on = true;
    for (Var v : vars) {
      if (!x[v]) {
        on = false;
        break;
      }
    }
    if (on) value += c;
  }
  return value;
}

PseudoBooleanPolynomial& PseudoBooleanPolynomial::operator+=(const PseudoBooleanPolynomial& other) {
  offset_ += other.offset_;
  for (const auto& [vars, c] : other.terms_) accumulate(vars, c);
  return *this;
}

PseudoBooleanPolynomial& PseudoBooleanPolynomial::operator-=(const PseudoBooleanPolynomial& other) {
  offset_ -= other.offset_;
  for (const auto& [vars, c] : other.terms_) accumulate(vars, -c);
  return *this;
}

PseudoBooleanPolynomial& PseudoBooleanPolynomial::operator*=(double scale) {
  offset_ *= scale;
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scale;
    if (std::abs(it->second) < kZeroThreshold) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

PseudoBooleanPolynomial operator*(const PseudoBooleanPolynomial& a,
                                  const PseudoBooleanPolynomial& b) {
  PseudoBooleanPolynomial out(a.offset_ * b.offset_);
  if (b.offset_ != 0.0) {
    for (const auto& [vars, c] : a.terms_) out.accumulate(vars, c * b.offset_);
  }
  if (a.offset_ != 0.0) {
    for (const auto& [vars, c] : b.terms_) out.accumulate(vars, c * a.offset_);
  }
  for (const auto& [va, ca] : a.terms_) {
    for (const auto& [vb, cb] : b.terms_) out.accumulate(merge_sets(va, vb), ca * cb);
  }
  return out;
}

bool PseudoBooleanPolynomial::approx_equal(const PseudoBooleanPolynomial& other,
                                           double tolerance) const {
  if (std::abs(offset_ - other.offset_) > tolerance) return false;
  auto diff = *this - other;
  for (const auto& [vars, c] : diff.terms_) {
    if (std::abs(c) > tolerance) return false;
  }
  return true;
}

std::string PseudoBooleanPolynomial::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [vars, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (Var v : vars) os << "*x" << v;
  }
  if (first || offset_ != 0.0) {
    if (!first) os << " + ";
    os << offset_;
  }
  return os.str();
}

PseudoBooleanPolynomial add(const PseudoBooleanPolynomial& p, const PseudoBooleanPolynomial& q) {
  return p + q;
}

PseudoBooleanPolynomial multiply(const PseudoBooleanPolynomial& p,
                                 const PseudoBooleanPolynomial& q) {
  return p * q;
}

}  // namespace rodqubo
