#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rodqubo/errors.hpp"
#include "rodqubo/rod_model.hpp"
#include "rodqubo/solvers.hpp"

using namespace rodqubo;

namespace {

RodProblem analysis_rod() { return RodProblem::uniform(1.5, 5, 1.0, 2.5); }
RodProblem design_rod() { return RodProblem::uniform(1.5, 2, 1.0, 1.5); }
const FixedAreas kAnalysisAreas{{0.25, 0.25, 0.25, 0.25, 0.25}};
const DesignableAreas kDesignChoices{0.25, 0.5};

oracle::RodObjective design_oracle(double lambda) {
  auto rod = design_rod();
  return {rod.nodes, rod.youngs_modulus, rod.body_force, 3, {}, {0.25, 0.5}, lambda};
}

}  // namespace

TEST_CASE("decode_coefficient") {
  CHECK(decode_coefficient(Bits{0, 0, 0}) == 0.0);
  CHECK(decode_coefficient(Bits{1, 1, 1}) == 1.0);
  CHECK(decode_coefficient(Bits{0, 1, 0}) == doctest::Approx(2.0 / 7.0));
  CHECK(decode_coefficient(Bits{0, 1, 1}, CoefficientEncoding{3}) == doctest::Approx(6.0 / 7.0));
  CHECK_THROWS_AS(decode_coefficient(Bits{1, 0}, CoefficientEncoding{3}), ValidationError);
  CHECK(CoefficientEncoding{10}.step() == doctest::Approx(1.0 / 1023.0));
}

TEST_CASE("property: decode_coefficient is monotone in the encoded integer") {
  for (std::size_t n_q = 1; n_q <= 8; ++n_q) {
    double previous = -1.0;
    for (std::uint64_t code = 0; code < (1U << n_q); ++code) {
      const double v = decode_coefficient(oracle::bits_of(code, n_q));
      CHECK(v > previous);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      previous = v;
    }
  }
}

TEST_CASE("element energy and residual closed forms") {
  CHECK(element_energy(1.0, 1.0, 1.0, 1.0, 1.0) == doctest::Approx(0.5));
  CHECK(element_energy(1.0, 1.0, 1.0, 1.0, 0.0) == doctest::Approx(1.0 / 6.0));
  const std::vector<double> nodes{0.0, 1.0};
  CHECK(oracle::energy_by_quadrature(nodes, {1.0, 1.0}, {1.0}, {1.0}) == doctest::Approx(0.5));
  CHECK(oracle::energy_by_quadrature(nodes, {1.0, 0.0}, {1.0}, {1.0}) ==
        doctest::Approx(1.0 / 6.0));
  CHECK(element_residual(0.75, 1.5, 0.5, 6.0 / 7.0, 2.0 / 7.0) ==
        doctest::Approx(-0.017857142857142856));
}

TEST_CASE("assemble_internal_energy") {
  SUBCASE("single element with a_1 = 1") {
    const auto rod = RodProblem::uniform(1.0, 1, 1.0, 1.0);
    const auto U = assemble_internal_energy(rod, FixedAreas{{1.0}}, CoefficientEncoding{2});
    CHECK(U.degree() == 2);
    CHECK(U.evaluate(Bits{1, 1}) == doctest::Approx(1.0 / 6.0));
    CHECK(U.evaluate(Bits{0, 0}) == 0.0);
  }
  SUBCASE("design optimum (6/7, 2/7, 0) on areas (0.5, 0.25)") {
    const auto U = assemble_internal_energy(design_rod(), kDesignChoices, CoefficientEncoding{3});
    CHECK(U.degree() == 3);
    // a_1 = 6 = 0b110, a_2 = 2 = 0b010, design bits (1, 0)
    const Bits x{0, 1, 1, 0, 1, 0, 1, 0};
    const double quadrature = oracle::energy_by_quadrature(
        design_rod().nodes, {6.0 / 7.0, 2.0 / 7.0, 0.0}, {0.5, 0.25}, {1.0, 1.0});
    CHECK(quadrature == doctest::Approx(15.0 / 49.0).epsilon(1e-12));
    CHECK(U.evaluate(x) == doctest::Approx(quadrature).epsilon(1e-12));
  }
}

TEST_CASE("assemble_penalty") {
  SUBCASE("exactly encodable admissible forces give zero") {
    // L = 3, three unit elements, A = 1, f = 1/3: a = (1, 2/3, 1/3, 0) = codes (3, 2, 1).
    const auto rod = RodProblem::uniform(3.0, 3, 1.0, 1.0 / 3.0);
    const auto pi = assemble_penalty(rod, FixedAreas{{1.0, 1.0, 1.0}}, CoefficientEncoding{2});
    CHECK(pi.degree() == 2);
    CHECK(pi.evaluate(Bits{1, 1, 0, 1, 1, 0}) == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("all-zero coefficients") {
    const auto rod = RodProblem::uniform(1.0, 1, 1.0, 1.0);
    const auto pi = assemble_penalty(rod, FixedAreas{{2.0}}, CoefficientEncoding{3});
    CHECK(pi.evaluate(Bits{0, 0, 0}) == doctest::Approx(1.0));
  }
  SUBCASE("design case residuals") {
    const auto pi = assemble_penalty(design_rod(), kDesignChoices, CoefficientEncoding{3});
    CHECK(pi.degree() == 3);
    const Bits x{0, 1, 1, 0, 1, 0, 1, 0};
    const double r = 1.125 - 8.0 / 7.0;  // both elements
    CHECK(pi.evaluate(x) == doctest::Approx(r * r).epsilon(1e-12));
  }
}

TEST_CASE("assemble_objective") {
  SUBCASE("lambda = 0 gives the energy") {
    const auto a = assemble_objective(design_rod(), kDesignChoices, CoefficientEncoding{3}, 0.0);
    CHECK(a.objective.approx_equal(a.energy, 0.0));
  }
  SUBCASE("analysis reference size") {
    const auto a = assemble_objective(analysis_rod(), kAnalysisAreas, CoefficientEncoding{10}, 20.0);
    CHECK(a.input_count() == 50);
    CHECK(a.objective.degree() == 2);
    CHECK(a.objective.variable_bound() == 50);
  }
  SUBCASE("design reference size") {
    const auto a = assemble_objective(design_rod(), kDesignChoices, CoefficientEncoding{3}, 5.0);
    CHECK(a.input_count() == 8);
    CHECK(a.objective.degree() == 3);
    CHECK(a.variables.registry.count(VariableKind::kDesignBit) == 2);
  }
  SUBCASE("negative penalty weight") {
    CHECK_THROWS_AS(assemble_objective(design_rod(), kDesignChoices, CoefficientEncoding{3}, -1.0),
                    ValidationError);
  }
  SUBCASE("invalid inputs") {
    CHECK_THROWS_AS(assemble_objective(design_rod(), DesignableAreas{0.5, 0.5},
                                       CoefficientEncoding{3}, 1.0),
                    ValidationError);
    CHECK_THROWS_AS(assemble_objective(design_rod(), FixedAreas{{0.5}}, CoefficientEncoding{3}, 1.0),
                    ValidationError);
    CHECK_THROWS_AS(assemble_objective(design_rod(), kDesignChoices, CoefficientEncoding{0}, 1.0),
                    ValidationError);
    CHECK_THROWS_AS(RodProblem::uniform(1.0, 0, 1.0, 1.0), ValidationError);
  }
}

TEST_CASE("property: J = U + lambda * pi coefficient-wise") {
  for (double lambda : {0.0, 0.5, 5.0, 20.0, 1e3, 1e9}) {
    for (bool designable : {false, true}) {
      const auto rod = designable ? design_rod() : analysis_rod();
      const CrossSectionSpec areas =
          designable ? CrossSectionSpec{kDesignChoices} : CrossSectionSpec{kAnalysisAreas};
      const auto a = assemble_objective(rod, areas, CoefficientEncoding{designable ? 3u : 6u}, lambda);
      const auto expected = a.energy + lambda * a.penalty;
      CHECK(a.objective.approx_equal(expected, 1e-12 * std::max(1.0, lambda)));
    }
  }
}

TEST_CASE("interior nodes share one coefficient; the free end has none") {
  const auto a = assemble_objective(analysis_rod(), kAnalysisAreas, CoefficientEncoding{4}, 1.0);
  const auto& nodes = a.variables.node_bits;
  REQUIRE(nodes.size() == 6);
  CHECK(nodes.back().empty());
  std::set<Var> seen;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    CHECK(nodes[i].size() == 4);
    for (Var v : nodes[i]) {
      CHECK(seen.insert(v).second);
      CHECK(a.variables.registry.kind(v) == VariableKind::kCoefficientBit);
    }
  }
  CHECK(seen.size() == 5 * 4);
  // node-major: node i owns [4i, 4i + 4)
  CHECK(nodes[2].front() == 8);
}

TEST_CASE("assembled objective agrees with the direct definition") {
  SUBCASE("design problem, all 256 inputs") {
    const auto a = assemble_objective(design_rod(), kDesignChoices, CoefficientEncoding{3}, 5.0);
    const auto J = design_oracle(5.0);
    for (std::uint64_t c = 0; c < 256; ++c) {
      const auto x = oracle::bits_of(c, 8);
      CHECK(a.objective.evaluate(x) == doctest::Approx(J(x)).epsilon(1e-12));
    }
  }
  SUBCASE("analysis problem, random inputs") {
    const auto rod = analysis_rod();
    const auto a = assemble_objective(rod, kAnalysisAreas, CoefficientEncoding{10}, 20.0);
    const oracle::RodObjective J{rod.nodes, rod.youngs_modulus, rod.body_force, 10,
                                 kAnalysisAreas.areas, {}, 20.0};
    std::mt19937_64 rng(41);
    for (int t = 0; t < 200; ++t) {
      Bits x(50);
      for (auto& b : x) b = rng() & 1U;
      CHECK(a.objective.evaluate(x) == doctest::Approx(J(x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("property: energy and penalty are non-negative") {
  SUBCASE("exhaustive on the design problem") {
    const auto a = assemble_objective(design_rod(), kDesignChoices, CoefficientEncoding{3}, 5.0);
    for (std::uint64_t c = 0; c < 256; ++c) {
      const auto x = oracle::bits_of(c, 8);
      CHECK(a.energy.evaluate(x) >= -1e-12);
      CHECK(a.penalty.evaluate(x) >= -1e-12);
    }
  }
  SUBCASE("random sampling at analysis scale") {
    const auto a = assemble_objective(analysis_rod(), kAnalysisAreas, CoefficientEncoding{10}, 20.0);
    std::mt19937_64 rng(43);
    for (int t = 0; t < 500; ++t) {
      Bits x(50);
      for (auto& b : x) b = rng() & 1U;
      CHECK(a.energy.evaluate(x) >= -1e-12);
      CHECK(a.penalty.evaluate(x) >= -1e-12);
    }
  }
}

TEST_CASE("analytic_force") {
  SUBCASE("uniform analysis rod") {
    const auto s = analytic_force(analysis_rod(), kAnalysisAreas.areas);
    CHECK(s.nodal_forces.front() == doctest::Approx(0.9375));
    CHECK(s.nodal_forces.back() == 0.0);
    for (double r : s.residuals) CHECK(r == doctest::Approx(0.0).epsilon(1e-14));
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      CHECK(s.nodal_forces[i] ==
            doctest::Approx(oracle::analytic_force_at(s.nodes, s.areas, 2.5, s.nodes[i])));
    }
  }
  SUBCASE("optimal design") {
    const std::vector<double> areas{0.5, 0.25};
    const auto s = analytic_force(design_rod(), areas);
    CHECK(s.nodal_forces[0] == doctest::Approx(0.84375));
    CHECK(s.nodal_forces[1] == doctest::Approx(0.28125));
    CHECK(s.nodal_forces[2] == 0.0);
    CHECK(s.force_at(1.5) == 0.0);
    CHECK(s.force_at(0.375) == doctest::Approx(0.5625));
  }
}

TEST_CASE("decode_sample") {
  const auto a = assemble_objective(design_rod(), kDesignChoices, CoefficientEncoding{3}, 5.0);
  SUBCASE("all zero") {
    const auto s = decode_sample(a, Bits(8, 0));
    for (double f : s.nodal_forces) CHECK(f == 0.0);
    CHECK(s.areas == std::vector<double>{0.25, 0.25});
  }
  SUBCASE("large-penalty optimum") {
    const Bits x{0, 1, 1, 0, 1, 0, 1, 0};
    const auto s = decode_sample(a, x);
    CHECK(s.areas == std::vector<double>{0.5, 0.25});
    CHECK(s.nodal_forces[0] == doctest::Approx(0.857142857142857));
    CHECK(s.nodal_forces[1] == doctest::Approx(0.285714285714286));
    CHECK(s.nodal_forces[2] == 0.0);
    CHECK(s.design == std::vector<std::uint8_t>{1, 0});
    CHECK(*s.objective == doctest::Approx(a.objective.evaluate(x)));
    CHECK(s.energy + 5.0 * a.penalty.evaluate(x) == doctest::Approx(*s.objective));
  }
  SUBCASE("auxiliary bits are ignored, missing bits rejected") {
    Bits x{0, 1, 1, 0, 1, 0, 1, 0, 1, 1, 1};
    CHECK(decode_sample(a, x).nodal_forces[0] == doctest::Approx(6.0 / 7.0));
    CHECK_THROWS_AS(decode_sample(a, Bits(5, 0)), MissingVariableError);
  }
}

TEST_CASE("nearest_encoding") {
  const auto a = assemble_objective(design_rod(), kDesignChoices, CoefficientEncoding{3}, 5.0);
  const std::vector<double> forces{0.84375, 0.28125, 0.0};
  const std::vector<std::uint8_t> design{1, 0};
  const auto x = nearest_encoding(a, forces, design);
  CHECK(x == Bits{0, 1, 1, 0, 1, 0, 1, 0});
}

TEST_CASE("property: global minimum of J is at most J at the nearest encoding of the analytic force") {
  for (std::size_t n_e = 1; n_e <= 3; ++n_e) {
    for (std::size_t n_q = 1; n_q <= 4; ++n_q) {
      for (double lambda : {1.0, 20.0}) {
        // f chosen so the analytic force stays inside [0, 1]
        const auto rod = RodProblem::uniform(1.5, n_e, 1.0, 2.5);
        const FixedAreas areas{std::vector<double>(n_e, 0.25)};
        const auto a = assemble_objective(rod, areas, CoefficientEncoding{n_q}, lambda);
        const auto exact = analytic_force(rod, areas.areas);
        const double at_nearest = a.objective.evaluate(nearest_encoding(a, exact.nodal_forces));
        const auto minimum = exhaustive_solve(quadratize(a).qubo).best().energy;
        CHECK(minimum <= at_nearest + 1e-12);
      }
    }
  }
}
