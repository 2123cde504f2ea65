#include <pybind11/chrono.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rodqubo/analysis.hpp"
#include "rodqubo/commands.hpp"
#include "rodqubo/config.hpp"
#include "rodqubo/errors.hpp"
#include "rodqubo/quadratization.hpp"
#include "rodqubo/qubo_io.hpp"
#include "rodqubo/remote_sampler.hpp"
#include "rodqubo/rod_model.hpp"
#include "rodqubo/solvers.hpp"

namespace py = pybind11;
using namespace rodqubo;

namespace {

// JSON crosses the boundary as text; the package wrapper turns it into dicts.
std::string dump(const nlohmann::json& j) { return j.dump(); }

py::dict terms_dict(const PseudoBooleanPolynomial& p) {
  py::dict d;
  for (const auto& [vars, c] : p.terms()) d[py::tuple(py::cast(vars))] = c;
  return d;
}

QuboProblem make_qubo(std::size_t dim, std::vector<double> linear,
                      const std::map<std::pair<Var, Var>, double>& quadratic, double offset,
                      std::vector<std::string> names) {
  return {dim, std::move(linear), quadratic, offset, std::move(names)};
}

Sampler sampler_named(const std::string& kind, std::uint64_t seed, std::size_t sweeps) {
  if (kind == "exhaustive") return exhaustive_sampler();
  if (kind == "sa") {
    AnnealConfig cfg;
    cfg.seed = seed;
    cfg.sweeps = sweeps;
    return annealing_sampler(cfg);
  }
  throw ValidationError("sampler must be 'exhaustive' or 'sa'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rod force analysis and design as QUBO problems";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<MissingVariableError>(m, "MissingVariableError", base);
  py::register_exception<UnsupportedDegreeError>(m, "UnsupportedDegreeError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<DimensionGuardError>(m, "DimensionGuardError", base);
  auto remote = py::register_exception<RemoteSamplerError>(m, "RemoteSamplerError", base);
  py::register_exception<TransportError>(m, "TransportError", remote);
  py::register_exception<TimeoutError>(m, "TimeoutError", remote);
  py::register_exception<MalformedResponseError>(m, "MalformedResponseError", remote);
  py::register_exception<EnergyMismatchError>(m, "EnergyMismatchError", remote);

  py::class_<PseudoBooleanPolynomial>(m, "Polynomial")
      .def(py::init<>())
      .def(py::init<double>(), py::arg("constant"))
      .def_static("variable", &PseudoBooleanPolynomial::variable, py::arg("index"),
                  py::arg("coefficient") = 1.0)
      .def_static("monomial", &PseudoBooleanPolynomial::monomial)
      .def("add_term", &PseudoBooleanPolynomial::add_term)
      .def("add_constant", &PseudoBooleanPolynomial::add_constant)
      .def("terms", &terms_dict)
      .def_property_readonly("offset", &PseudoBooleanPolynomial::offset)
      .def_property_readonly("degree", &PseudoBooleanPolynomial::degree)
      .def_property_readonly("variable_bound", &PseudoBooleanPolynomial::variable_bound)
      .def("evaluate", [](const PseudoBooleanPolynomial& p, const Bits& x) { return p.evaluate(x); })
      .def("approx_equal", &PseudoBooleanPolynomial::approx_equal, py::arg("other"),
           py::arg("tolerance") = 1e-12)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self * double())
      .def(double() * py::self)
      .def("__repr__", &PseudoBooleanPolynomial::to_string);

  py::class_<QuboProblem>(m, "QuboProblem")
      .def(py::init(&make_qubo), py::arg("dimension"), py::arg("linear"), py::arg("quadratic"),
           py::arg("offset") = 0.0, py::arg("variable_names") = std::vector<std::string>{})
      .def_static("from_polynomial", &QuboProblem::from_polynomial, py::arg("polynomial"),
                  py::arg("dimension"), py::arg("variable_names") = std::vector<std::string>{})
      .def_property_readonly("dimension", &QuboProblem::dimension)
      .def_property_readonly("linear", &QuboProblem::linear)
      .def_property_readonly("quadratic", &QuboProblem::quadratic)
      .def_property_readonly("offset", &QuboProblem::offset)
      .def_property_readonly("variable_names", &QuboProblem::variable_names)
      .def("energy", [](const QuboProblem& q, const Bits& x) { return q.energy(x); })
      .def("to_polynomial", &QuboProblem::to_polynomial)
      .def("pattern", &qubo_pattern)
      .def("to_json", [](const QuboProblem& q) { return dump(qubo_to_json(q)); })
      .def_static("from_json",
                  [](const std::string& s) { return qubo_from_json(nlohmann::json::parse(s)); });

  py::class_<CoefficientStats>(m, "CoefficientStats")
      .def_readonly("max_abs", &CoefficientStats::max_abs)
      .def_readonly("min_abs_nonzero", &CoefficientStats::min_abs_nonzero)
      .def_readonly("dynamic_range", &CoefficientStats::dynamic_range)
      .def_readonly("nonzero_count", &CoefficientStats::nonzero_count);
  m.def("coefficient_stats", &coefficient_stats);

  py::class_<ReductionEntry>(m, "ReductionEntry")
      .def_readonly("auxiliary", &ReductionEntry::auxiliary)
      .def_readonly("monomial", &ReductionEntry::monomial)
      .def_readonly("coefficient", &ReductionEntry::coefficient)
      .def_property_readonly("identity",
                             [](const ReductionEntry& r) { return std::string(to_string(r.identity)); });

  py::class_<Quadratization>(m, "Quadratization")
      .def_readonly("qubo", &Quadratization::qubo)
      .def_readonly("reductions", &Quadratization::reductions)
      .def_readonly("source_degree", &Quadratization::source_degree)
      .def_property_readonly("input_count",
                             [](const Quadratization& r) { return r.registry.input_count(); })
      .def_property_readonly("variable_names",
                             [](const Quadratization& r) { return r.registry.names(); })
      .def("complete_auxiliaries",
           [](const Quadratization& r, const Bits& inputs) { return complete_auxiliaries(r, inputs); });
  m.def("reduce_to_quadratic",
        py::overload_cast<const PseudoBooleanPolynomial&, std::size_t>(&reduce_to_quadratic),
        py::arg("polynomial"), py::arg("input_dimension"));

  py::class_<RodProblem>(m, "RodProblem")
      .def(py::init<>())
      .def_static("uniform", &RodProblem::uniform, py::arg("length"), py::arg("n_elements"),
                  py::arg("youngs_modulus"), py::arg("body_force"))
      .def_readwrite("nodes", &RodProblem::nodes)
      .def_readwrite("youngs_modulus", &RodProblem::youngs_modulus)
      .def_readwrite("body_force", &RodProblem::body_force)
      .def_property_readonly("element_count", &RodProblem::element_count)
      .def("validate", &RodProblem::validate);

  py::class_<FixedAreas>(m, "FixedAreas")
      .def(py::init<std::vector<double>>(), py::arg("areas"))
      .def_readwrite("areas", &FixedAreas::areas);
  py::class_<DesignableAreas>(m, "DesignableAreas")
      .def(py::init([](double a, double b) { return DesignableAreas{a, b}; }), py::arg("first"),
           py::arg("second"))
      .def_readwrite("first", &DesignableAreas::first)
      .def_readwrite("second", &DesignableAreas::second);

  py::class_<CoefficientEncoding>(m, "CoefficientEncoding")
      .def(py::init([](std::size_t bits) {
             CoefficientEncoding e{bits};
             e.validate();
             return e;
           }),
           py::arg("bits"))
      .def_readonly("bits", &CoefficientEncoding::bits)
      .def_property_readonly("step", &CoefficientEncoding::step);
  m.def("decode_coefficient",
        [](const Bits& bits) { return decode_coefficient(bits); }, py::arg("bits"));

  py::class_<AssembledProblem>(m, "AssembledProblem")
      .def_readonly("rod", &AssembledProblem::rod)
      .def_readonly("encoding", &AssembledProblem::encoding)
      .def_readonly("penalty_weight", &AssembledProblem::penalty_weight)
      .def_readonly("energy", &AssembledProblem::energy)
      .def_readonly("penalty", &AssembledProblem::penalty)
      .def_readonly("objective", &AssembledProblem::objective)
      .def_property_readonly("input_count", &AssembledProblem::input_count)
      .def_property_readonly("variable_names",
                             [](const AssembledProblem& a) { return a.variables.registry.names(); });
  m.def("assemble_objective", &assemble_objective, py::arg("rod"), py::arg("areas"),
        py::arg("encoding"), py::arg("penalty_weight"));
  m.def("quadratize", &quadratize);

  py::class_<ForceSolution>(m, "ForceSolution")
      .def_readonly("nodes", &ForceSolution::nodes)
      .def_readonly("nodal_forces", &ForceSolution::nodal_forces)
      .def_readonly("areas", &ForceSolution::areas)
      .def_readonly("residuals", &ForceSolution::residuals)
      .def_readonly("energy", &ForceSolution::energy)
      .def_readonly("objective", &ForceSolution::objective)
      .def_readonly("design", &ForceSolution::design)
      .def("force_at", &ForceSolution::force_at);
  m.def("analytic_force",
        [](const RodProblem& rod, const std::vector<double>& areas) { return analytic_force(rod, areas); },
        py::arg("rod"), py::arg("areas"));
  m.def("decode_sample",
        [](const AssembledProblem& a, const Bits& bits) { return decode_sample(a, bits); });
  m.def("nearest_encoding",
        [](const AssembledProblem& a, const std::vector<double>& forces, const Bits& design) {
          return nearest_encoding(a, forces, design);
        },
        py::arg("assembled"), py::arg("nodal_forces"), py::arg("design") = Bits{});

  py::class_<H1ErrorReport>(m, "H1ErrorReport")
      .def_readonly("l2_component", &H1ErrorReport::l2_component)
      .def_readonly("seminorm_component", &H1ErrorReport::seminorm_component)
      .def_readonly("reference_norm", &H1ErrorReport::reference_norm)
      .def_readonly("relative_h1", &H1ErrorReport::relative_h1);
  m.def("h1_relative_error", &h1_relative_error, py::arg("solution"), py::arg("reference"));
  m.def("admissibility_residual", &admissibility_residual);

  py::class_<RankedDesign>(m, "RankedDesign")
      .def_readonly("design", &RankedDesign::design)
      .def_readonly("areas", &RankedDesign::areas)
      .def_readonly("compliance", &RankedDesign::compliance);
  m.def("compliance_rank", &compliance_rank, py::arg("rod"), py::arg("choices"));

  py::class_<Sample>(m, "Sample")
      .def_readonly("bits", &Sample::bits)
      .def_readonly("energy", &Sample::energy)
      .def_readonly("count", &Sample::count);
  py::class_<SampleSet>(m, "SampleSet")
      .def_readonly("samples", &SampleSet::samples)
      .def_readonly("solver", &SampleSet::solver)
      .def_readonly("stage", &SampleSet::stage)
      .def_readonly("seed", &SampleSet::seed)
      .def_readonly("reads", &SampleSet::reads)
      .def("best", &SampleSet::best)
      .def("total_count", &SampleSet::total_count)
      .def("__len__", [](const SampleSet& s) { return s.samples.size(); })
      .def("to_json", [](const SampleSet& s) { return dump(to_json(s)); });

  m.def("exhaustive_solve",
        [](const QuboProblem& q, std::size_t max_dimension) {
          return exhaustive_solve(q, {max_dimension});
        },
        py::arg("qubo"), py::arg("max_dimension") = 30);
  m.def("simulated_annealing",
        [](const QuboProblem& q, std::size_t reads, std::size_t sweeps, std::uint64_t seed,
           std::optional<double> beta_start, std::optional<double> beta_end, std::size_t threads) {
          AnnealConfig cfg;
          cfg.reads = reads;
          cfg.sweeps = sweeps;
          cfg.seed = seed;
          cfg.beta_start = beta_start;
          cfg.beta_end = beta_end;
          cfg.threads = threads;
          py::gil_scoped_release release;
          return simulated_annealing(q, cfg);
        },
        py::arg("qubo"), py::arg("reads") = 100, py::arg("sweeps") = 1000, py::arg("seed") = 0,
        py::arg("beta_start") = py::none(), py::arg("beta_end") = py::none(),
        py::arg("threads") = 0);
  m.def("greedy_descent", [](const QuboProblem& q, const Bits& start) {
    const auto r = greedy_descent(q, start);
    return py::make_tuple(r.bits, r.value, r.steps);
  });
  m.def("remote_sample",
        [](const std::string& endpoint, const QuboProblem& q, std::size_t reads,
           std::chrono::milliseconds timeout) { return remote_sample(endpoint, q, reads, timeout); },
        py::arg("endpoint"), py::arg("qubo"), py::arg("reads"),
        py::arg("timeout") = std::chrono::milliseconds(10000));

  py::class_<TwoStageResult>(m, "TwoStageResult")
      .def_readonly("stage1", &TwoStageResult::stage1)
      .def_readonly("stage2", &TwoStageResult::stage2)
      .def_readonly("problem", &TwoStageResult::problem)
      .def_readonly("reduced", &TwoStageResult::reduced);
  m.def("two_stage_solve",
        [](const RodProblem& rod, const CrossSectionSpec& areas, const CoefficientEncoding& enc,
           double lambda_small, double lambda_large, std::size_t reads, const std::string& sampler,
           std::uint64_t seed, std::size_t sweeps) {
          const TwoStageConfig cfg{lambda_small, lambda_large, reads};
          const auto s = sampler_named(sampler, seed, sweeps);
          py::gil_scoped_release release;
          return two_stage_solve(rod, areas, enc, cfg, s);
        },
        py::arg("rod"), py::arg("areas"), py::arg("encoding"), py::arg("lambda_small") = 20.0,
        py::arg("lambda_large") = 1e9, py::arg("reads") = 500, py::arg("sampler") = "sa",
        py::arg("seed") = 0, py::arg("sweeps") = 1000);

  // Config-driven commands; results come back as JSON text.
  m.def("formulate", [](const std::string& config_json) {
    return dump(formulation_summary(formulate(parse_problem_config(nlohmann::json::parse(config_json)))));
  });
  m.def("solve", [](const std::string& config_json, std::optional<std::filesystem::path> out) {
    const auto cfg = parse_problem_config(nlohmann::json::parse(config_json));
    SolveOutcome o;
    {
      py::gil_scoped_release release;
      o = solve(cfg);
    }
    if (out) write_solution(o, *out);
    return dump(solution_summary(o));
  }, py::arg("config_json"), py::arg("out") = py::none());
  m.def("verify", [](const std::filesystem::path& path) {
    Verdict v;
    {
      py::gil_scoped_release release;
      v = verify(path);
    }
    return dump(to_json(v));
  });

  py::class_<MockSamplerServer>(m, "MockSamplerServer")
      .def(py::init([](const std::string& mode, std::chrono::milliseconds latency) {
             auto kind = MockSamplerServer::Mode::kExhaustive;
             if (mode == "corrupt-energy") kind = MockSamplerServer::Mode::kCorruptEnergy;
             else if (mode == "malformed") kind = MockSamplerServer::Mode::kMalformed;
             else if (mode != "exhaustive") throw ValidationError("unknown mock mode '" + mode + "'");
             return std::make_unique<MockSamplerServer>(kind, latency);
           }),
           py::arg("mode") = "exhaustive", py::arg("latency") = std::chrono::milliseconds(0))
      .def_property_readonly("port", &MockSamplerServer::port)
      .def_property_readonly("endpoint", &MockSamplerServer::endpoint)
      .def_property_readonly("requests_served", &MockSamplerServer::requests_served);
}
