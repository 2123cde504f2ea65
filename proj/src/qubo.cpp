#include "rodqubo/qubo.hpp"

#include <algorithm>
#include <cmath>

#include "rodqubo/errors.hpp"

namespace rodqubo {

const char* to_string(VariableKind kind) {
  switch (kind) {
    case VariableKind::kCoefficientBit: return "coefficient";
    case VariableKind::kDesignBit: return "design";
    case VariableKind::kAuxiliary: return "auxiliary";
  }
  return "unknown";
}

Var VariableRegistry::add(VariableKind kind, std::string name) {
  if (!kinds_.empty() && static_cast<int>(kind) < static_cast<int>(kinds_.back())) {
    throw ValidationError("variable '" + name + "' of kind " + to_string(kind) +
                          " added after a " + to_string(kinds_.back()) + " variable");
  }
  kinds_.push_back(kind);
  names_.push_back(std::move(name));
  return static_cast<Var>(kinds_.size() - 1);
}

std::size_t VariableRegistry::count(VariableKind kind) const noexcept {
  return static_cast<std::size_t>(std::count(kinds_.begin(), kinds_.end(), kind));
}

std::size_t VariableRegistry::input_count() const noexcept {
  return size() - count(VariableKind::kAuxiliary);
}

QuboProblem::QuboProblem(std::size_t dimension, std::vector<double> linear, PairMap quadratic,
                         double offset, std::vector<std::string> variable_names)
    : linear_(std::move(linear)),
      quadratic_(std::move(quadratic)),
      offset_(offset),
      names_(std::move(variable_names)) {
  if (linear_.size() != dimension) {
    throw ValidationError("linear coefficient count " + std::to_string(linear_.size()) +
                          " does not match dimension " + std::to_string(dimension));
  }
  if (!names_.empty() && names_.size() != dimension) {
    throw ValidationError("variable name count does not match dimension");
  }
  PairMap normalized;
  for (const auto& [key, v] : quadratic_) {
    auto [i, j] = key;
    if (i == j) throw ValidationError("self-pair (" + std::to_string(i) + "," +
                                      std::to_string(i) + ") in quadratic part");
    if (i > j) std::swap(i, j);
    if (j >= dimension) throw ValidationError("quadratic index out of range");
    normalized[{i, j}] += v;
  }
  std::erase_if(normalized, [](const auto& kv) { return std::abs(kv.second) < kZeroThreshold; });
  quadratic_ = std::move(normalized);
  if (names_.empty()) {
    names_.reserve(dimension);
    for (std::size_t i = 0; i < dimension; ++i) names_.push_back("x" + std::to_string(i));
  }
  build_adjacency();
}

QuboProblem QuboProblem::from_polynomial(const PseudoBooleanPolynomial& p, std::size_t dimension,
                                         std::vector<std::string> variable_names) {
  if (p.degree() > 2) {
    throw UnsupportedDegreeError("polynomial of degree " + std::to_string(p.degree()) +
                                 " is not quadratic; reduce it first");
  }
  if (p.variable_bound() > dimension) {
    throw ValidationError("polynomial uses variable " + std::to_string(p.variable_bound() - 1) +
                          " beyond dimension " + std::to_string(dimension));
  }
  std::vector<double> linear(dimension, 0.0);
  PairMap quadratic;
  for (const auto& [vars, c] : p.terms()) {
    if (vars.size() == 1) {
      linear[vars[0]] += c;
    } else {
      quadratic[{vars[0], vars[1]}] += c;
    }
  }
  return {dimension, std::move(linear), std::move(quadratic), p.offset(),
          std::move(variable_names)};
}

void QuboProblem::build_adjacency() {
  const std::size_t n = linear_.size();
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [key, v] : quadratic_) {
    ++degree[key.first];
    ++degree[key.second];
  }
  row_start_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) row_start_[i + 1] = row_start_[i] + degree[i];
  adjacency_.resize(row_start_[n]);
  std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);
  for (const auto& [key, v] : quadratic_) {
    adjacency_[fill[key.first]++] = {key.second, v};
    adjacency_[fill[key.second]++] = {key.first, v};
  }
}

double QuboProblem::energy(std::span<const std::uint8_t> x) const {
  if (x.size() < linear_.size()) {
    throw MissingVariableError(x.size(), "assignment of length " + std::to_string(x.size()) +
                                             " does not cover variable " +
                                             std::to_string(x.size()));
  }
  double e = offset_;
  for (std::size_t i = 0; i < linear_.size(); ++i) {
    if (x[i]) e += linear_[i];
  }
  for (const auto& [key, v] : quadratic_) {
    if (x[key.first] && x[key.second]) e += v;
  }
  return e;
}

double QuboProblem::field(std::span<const std::uint8_t> x, Var i) const {
  double h = linear_[i];
  for (const auto& nb : neighbors(i)) {
    if (x[nb.index]) h += nb.weight;
  }
  return h;
}

double QuboProblem::magnitude() const noexcept {
  double m = std::abs(offset_);
  for (double v : linear_) m += std::abs(v);
  for (const auto& [key, v] : quadratic_) m += std::abs(v);
  return m;
}

PseudoBooleanPolynomial QuboProblem::to_polynomial() const {
  PseudoBooleanPolynomial p(offset_);
  for (std::size_t i = 0; i < linear_.size(); ++i) {
    if (linear_[i] != 0.0) p.add_term({static_cast<Var>(i)}, linear_[i]);
  }
  for (const auto& [key, v] : quadratic_) p.add_term({key.first, key.second}, v);
  return p;
}

QuboProblem QuboProblem::scaled(double factor) const {
  std::vector<double> linear = linear_;
  for (double& v : linear) v *= factor;
  PairMap quadratic = quadratic_;
  for (auto& [key, v] : quadratic) v *= factor;
  return {linear.size(), std::move(linear), std::move(quadratic), offset_ * factor, names_};
}

std::vector<std::pair<Var, Var>> qubo_pattern(const QuboProblem& q) {
  std::vector<std::pair<Var, Var>> out;
  for (std::size_t i = 0; i < q.dimension(); ++i) {
    if (q.linear()[i] != 0.0) out.emplace_back(static_cast<Var>(i), static_cast<Var>(i));
  }
  for (const auto& [key, v] : q.quadratic()) {
    out.emplace_back(key.first, key.second);
    out.emplace_back(key.second, key.first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CoefficientStats coefficient_stats(const QuboProblem& q) {
  CoefficientStats s;
  auto visit = [&s](double v) {
    double a = std::abs(v);
    if (a == 0.0) return;
    if (s.nonzero_count == 0) {
      s.max_abs = s.min_abs_nonzero = a;
    } else {
      s.max_abs = std::max(s.max_abs, a);
      s.min_abs_nonzero = std::min(s.min_abs_nonzero, a);
    }
    ++s.nonzero_count;
  };
  for (double v : q.linear()) visit(v);
  for (const auto& [key, v] : q.quadratic()) visit(v);
  if (s.nonzero_count == 0) throw ValidationError("QUBO has no nonzero coefficients");
  s.dynamic_range = s.max_abs / s.min_abs_nonzero;
  return s;
}

}  // namespace rodqubo
