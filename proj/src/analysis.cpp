#include "rodqubo/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "rodqubo/errors.hpp"

namespace rodqubo {

namespace {

struct SquaredParts {
  double l2 = 0.0;
  double semi = 0.0;
};

SquaredParts squared_h1(std::span<const double> nodes, std::span<const double> values) {
  SquaredParts s;
  for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
    const double dx = nodes[e + 1] - nodes[e];
    const double l = values[e], r = values[e + 1];
    s.l2 += dx / 3.0 * (l * l + l * r + r * r);
    const double slope = (r - l) / dx;
    s.semi += dx * slope * slope;
  }
  return s;
}

}  // namespace

H1ErrorReport h1_relative_error(const ForceSolution& solution, const ForceSolution& reference) {
  if (solution.nodes.size() != reference.nodes.size() ||
      solution.nodal_forces.size() != solution.nodes.size() ||
      reference.nodal_forces.size() != reference.nodes.size()) {
    throw ValidationError("H1 error needs two fields on the same mesh");
  }
  for (std::size_t i = 0; i < solution.nodes.size(); ++i) {
    if (std::abs(solution.nodes[i] - reference.nodes[i]) > 1e-12) {
      throw ValidationError("H1 error needs two fields on the same mesh");
    }
  }
  std::vector<double> diff(solution.nodal_forces.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = solution.nodal_forces[i] - reference.nodal_forces[i];
  }
  const auto d = squared_h1(reference.nodes, diff);
  const auto ref = squared_h1(reference.nodes, reference.nodal_forces);
  H1ErrorReport report;
  report.l2_component = std::sqrt(d.l2);
  report.seminorm_component = std::sqrt(d.semi);
  report.reference_norm = std::sqrt(ref.l2 + ref.semi);
  if (report.reference_norm == 0.0) throw ValidationError("reference field has zero H1 norm");
  report.relative_h1 = std::sqrt(d.l2 + d.semi) / report.reference_norm;
  return report;
}

double admissibility_residual(const ForceSolution& solution) {
  double worst = 0.0;
  for (double r : solution.residuals) worst = std::max(worst, std::abs(r));
  return worst;
}

std::vector<RankedDesign> compliance_rank(const RodProblem& rod, const DesignableAreas& choices) {
  rod.validate();
  validate(CrossSectionSpec{choices}, rod.element_count());
  const auto n_e = rod.element_count();
  if (n_e > 16) throw ValidationError("compliance_rank enumerates at most 16 elements");
  std::vector<RankedDesign> out;
  out.reserve(std::size_t{1} << n_e);
  for (std::uint32_t code = 0; code < (1U << n_e); ++code) {
    RankedDesign d;
    for (std::size_t e = 0; e < n_e; ++e) {
      d.design.push_back((code >> e) & 1U);
      d.areas.push_back(d.design.back() ? choices.second : choices.first);
    }
    d.compliance = analytic_force(rod, d.areas).energy;
    out.push_back(std::move(d));
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedDesign& a, const RankedDesign& b) {
    if (a.compliance != b.compliance) return a.compliance < b.compliance;
    return a.design < b.design;
  });
  return out;
}

SolutionReport make_solution_report(const AssembledProblem& assembled,
                                    std::span<const std::uint8_t> bits, std::size_t rank) {
  SolutionReport r;
  r.solution = decode_sample(assembled, bits);
  r.reference = analytic_force(assembled.rod, r.solution.areas);
  r.h1 = h1_relative_error(r.solution, r.reference);
  r.admissibility = admissibility_residual(r.solution);
  r.rank = rank;
  return r;
}

}  // namespace rodqubo
