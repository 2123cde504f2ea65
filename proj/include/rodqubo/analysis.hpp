#pragma once

#include <vector>

#include "rodqubo/rod_model.hpp"

namespace rodqubo {

struct H1ErrorReport {
  double l2_component = 0.0;         ///< ||F - F*||_L2
  double seminorm_component = 0.0;   ///< ||F' - F*'||_L2
  double reference_norm = 0.0;       ///< ||F*||_H1
  double relative_h1 = 0.0;
};

/// Relative H1 error of two piecewise-linear fields on the same mesh, with
/// the unweighted norm ||g||^2 = int g^2 + int g'^2 integrated exactly.
/// Throws ValidationError on mismatched meshes.
H1ErrorReport h1_relative_error(const ForceSolution& solution, const ForceSolution& reference);

/// max_e |pi_e|
double admissibility_residual(const ForceSolution& solution);

struct RankedDesign {
  std::vector<std::uint8_t> design;  ///< bit e set: element e uses the second choice
  std::vector<double> areas;
  double compliance = 0.0;           ///< U^c at the exact admissible force
};

/// Every two-choice design of `rod`, sorted by compliance ascending (ties by
/// design bits). Limited to 16 elements.
std::vector<RankedDesign> compliance_rank(const RodProblem& rod, const DesignableAreas& choices);

struct SolutionReport {
  ForceSolution solution;
  ForceSolution reference;  ///< exact admissible force for the decoded areas
  H1ErrorReport h1;
  double admissibility = 0.0;
  std::size_t rank = 0;  ///< 0-based position in the ranked sample set
};

/// Decodes `bits` against `assembled` and compares it with the analytic force
/// for the same areas.
SolutionReport make_solution_report(const AssembledProblem& assembled,
                                    std::span<const std::uint8_t> bits, std::size_t rank = 0);

}  // namespace rodqubo
