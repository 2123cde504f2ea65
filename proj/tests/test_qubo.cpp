#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rodqubo/errors.hpp"
#include "rodqubo/qubo.hpp"
#include "rodqubo/qubo_io.hpp"
#include "rodqubo/solvers.hpp"

using rodqubo::PseudoBooleanPolynomial;
using rodqubo::QuboProblem;

namespace {

QuboProblem random_qubo(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  std::vector<double> linear(n);
  for (auto& v : linear) v = coeff(rng);
  QuboProblem::PairMap quadratic;
  for (rodqubo::Var i = 0; i < n; ++i) {
    for (rodqubo::Var j = i + 1; j < n; ++j) {
      if (rng() % 2) quadratic[{i, j}] = coeff(rng);
    }
  }
  return {n, std::move(linear), std::move(quadratic), coeff(rng)};
}

}  // namespace

TEST_CASE("QUBO from polynomial matches polynomial evaluation") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = PseudoBooleanPolynomial(1.5);
    p.add_term({0}, -2.0);
    p.add_term({1, 3}, 0.75);
    p.add_term({2}, rng() % 7 - 3.0);
    p.add_term({0, 2}, 4.0);
    const auto q = QuboProblem::from_polynomial(p, 4);
    for (std::uint64_t c = 0; c < 16; ++c) {
      const auto x = oracle::bits_of(c, 4);
      CHECK(q.energy(x) == doctest::Approx(p.evaluate(x)));
    }
    CHECK(q.to_polynomial().approx_equal(p));
  }
  CHECK_THROWS_AS(QuboProblem::from_polynomial(PseudoBooleanPolynomial::monomial({0, 1, 2}, 1.0), 3),
                  rodqubo::UnsupportedDegreeError);
}

TEST_CASE("constructor rejects self pairs and normalises orientation") {
  CHECK_THROWS_AS(QuboProblem(2, {0.0, 0.0}, {{{1, 1}, 1.0}}, 0.0), rodqubo::ValidationError);
  QuboProblem q(3, {0.0, 0.0, 0.0}, {{{2, 0}, 1.0}, {{0, 2}, 0.5}}, 0.0);
  REQUIRE(q.quadratic().size() == 1);
  CHECK(q.quadratic().at({0, 2}) == 1.5);
  CHECK(q.neighbors(0).size() == 1);
  CHECK(q.neighbors(2).size() == 1);
  CHECK(q.neighbors(1).empty());
}

TEST_CASE("flip deltas agree with full evaluation") {
  std::mt19937_64 rng(11);
  const auto q = random_qubo(rng, 7);
  for (std::uint64_t c = 0; c < 128; ++c) {
    auto x = oracle::bits_of(c, 7);
    for (rodqubo::Var i = 0; i < 7; ++i) {
      const double before = q.energy(x);
      const double delta = q.flip_delta(x, i);
      x[i] ^= 1U;
      CHECK(q.energy(x) - before == doctest::Approx(delta));
      x[i] ^= 1U;
    }
  }
}

TEST_CASE("qubo_pattern") {
  SUBCASE("diagonal only") {
    QuboProblem q(3, {1.0, -2.0, 0.5}, {}, 0.0);
    const auto pattern = rodqubo::qubo_pattern(q);
    REQUIRE(pattern.size() == 3);
    for (rodqubo::Var i = 0; i < 3; ++i) CHECK(pattern[i] == std::pair{i, i});
  }
  SUBCASE("symmetric") {
    QuboProblem q(3, {0.0, 1.0, 0.0}, {{{0, 2}, 1.0}}, 0.0);
    const auto pattern = rodqubo::qubo_pattern(q);
    const std::vector<std::pair<rodqubo::Var, rodqubo::Var>> expected{{0, 2}, {1, 1}, {2, 0}};
    CHECK(pattern == expected);
  }
}

TEST_CASE("coefficient_stats") {
  QuboProblem q(2, {1.0, -4.0}, {}, 100.0);
  const auto s = rodqubo::coefficient_stats(q);
  CHECK(s.max_abs == 4.0);
  CHECK(s.min_abs_nonzero == 1.0);
  CHECK(s.dynamic_range == 4.0);

  QuboProblem flat(3, {2.0, -2.0, 2.0}, {{{0, 1}, -2.0}}, 0.0);
  CHECK(rodqubo::coefficient_stats(flat).dynamic_range == 1.0);

  CHECK_THROWS_AS(rodqubo::coefficient_stats(QuboProblem(2, {0.0, 0.0}, {}, 3.0)),
                  rodqubo::ValidationError);
}

TEST_CASE("property: JSON and .qubo text round trips preserve the energy function") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = random_qubo(rng, 6);
    const auto from_json = rodqubo::qubo_from_json(nlohmann::json::parse(
        rodqubo::qubo_to_json(q).dump()));
    std::stringstream text;
    rodqubo::write_qubo_text(text, q);
    const auto from_text = rodqubo::read_qubo_text(text);
    for (std::uint64_t c = 0; c < 64; ++c) {
      const auto x = oracle::bits_of(c, 6);
      CHECK(from_json.energy(x) == q.energy(x));
      CHECK(from_text.energy(x) == q.energy(x));
    }
    CHECK(from_json.variable_names() == q.variable_names());
  }
}

TEST_CASE(".qubo text layout") {
  QuboProblem q(3, {1.0, 0.0, -0.5}, {{{0, 1}, 2.0}, {{1, 2}, -1.0}}, 0.25);
  std::ostringstream os;
  rodqubo::write_qubo_text(os, q);
  CHECK(os.str() ==
        "c offset 0.25\n"
        "p qubo 0 3 2 2\n"
        "0 0 1\n"
        "2 2 -0.5\n"
        "0 1 2\n"
        "1 2 -1\n");

  std::istringstream bad("p qubo 0 2 1 0\n0 0 1\n0 1 3\n");
  CHECK_THROWS_AS(rodqubo::read_qubo_text(bad), rodqubo::ValidationError);
}

TEST_CASE("pattern CSV") {
  QuboProblem q(2, {1.0, 0.0}, {{{0, 1}, 1.0}}, 0.0);
  std::ostringstream os;
  rodqubo::write_pattern_csv(os, q);
  CHECK(os.str() == "i,j\n0,0\n0,1\n1,0\n");
}

TEST_CASE("property: positive scaling leaves the minimiser set unchanged") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto q = random_qubo(rng, 8);
    const double factor = 0.01 + 100.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    const auto a = rodqubo::exhaustive_solve(q);
    const auto b = rodqubo::exhaustive_solve(q.scaled(factor));
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].bits == b.samples[i].bits);
  }
}
