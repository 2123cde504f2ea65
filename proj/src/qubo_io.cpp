#include "rodqubo/qubo_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "rodqubo/errors.hpp"

namespace rodqubo {

nlohmann::json qubo_to_json(const QuboProblem& q) {
  nlohmann::json quadratic = nlohmann::json::array();
  for (const auto& [key, v] : q.quadratic()) quadratic.push_back({key.first, key.second, v});
  return {{"dimension", q.dimension()},
          {"linear", q.linear()},
          {"quadratic", std::move(quadratic)},
          {"offset", q.offset()},
          {"variable_names", q.variable_names()}};
}

QuboProblem qubo_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("dimension").get<std::size_t>();
    auto linear = j.at("linear").get<std::vector<double>>();
    QuboProblem::PairMap quadratic;
    for (const auto& entry : j.at("quadratic")) {
      if (!entry.is_array() || entry.size() != 3) {
        throw ValidationError("quadratic entries must be [i, j, value] triples");
      }
      quadratic[{entry[0].get<Var>(), entry[1].get<Var>()}] += entry[2].get<double>();
    }
    std::vector<std::string> names;
    if (j.contains("variable_names")) names = j["variable_names"].get<std::vector<std::string>>();
    return {n, std::move(linear), std::move(quadratic), j.value("offset", 0.0), std::move(names)};
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid QUBO JSON: ") + e.what());
  }
}

void write_qubo_text(std::ostream& os, const QuboProblem& q) {
  std::size_t n_diag = 0;
  for (double v : q.linear()) n_diag += v != 0.0;
  if (q.offset() != 0.0) os << fmt::format("c offset {}\n", q.offset());
  os << fmt::format("p qubo 0 {} {} {}\n", q.dimension(), n_diag, q.quadratic().size());
  for (std::size_t i = 0; i < q.dimension(); ++i) {
    if (q.linear()[i] != 0.0) os << fmt::format("{} {} {}\n", i, i, q.linear()[i]);
  }
  for (const auto& [key, v] : q.quadratic()) {
    os << fmt::format("{} {} {}\n", key.first, key.second, v);
  }
}

QuboProblem read_qubo_text(std::istream& is) {
  std::string line;
  double offset = 0.0;
  std::size_t dimension = 0, n_diag = 0, n_elem = 0;
  bool header = false;
  std::vector<double> linear;
  QuboProblem::PairMap quadratic;
  std::size_t seen_diag = 0, seen_elem = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == 'c') {
      std::string c, key;
      ls >> c >> key;
      if (key == "offset") ls >> offset;
      continue;
    }
    if (line[0] == 'p') {
      std::string p, kind, topology;
      ls >> p >> kind >> topology >> dimension >> n_diag >> n_elem;
      if (!ls || kind != "qubo") throw ValidationError("bad qubo header: " + line);
      linear.assign(dimension, 0.0);
      header = true;
      continue;
    }
    if (!header) throw ValidationError("qubo data before header line");
    std::size_t i = 0, j = 0;
    double v = 0.0;
    ls >> i >> j >> v;
    if (!ls || i >= dimension || j >= dimension) throw ValidationError("bad qubo line: " + line);
    if (i == j) {
      linear[i] += v;
      ++seen_diag;
    } else {
      quadratic[{static_cast<Var>(i), static_cast<Var>(j)}] += v;
      ++seen_elem;
    }
  }
  if (!header) throw ValidationError("missing qubo header line");
  if (seen_diag != n_diag || seen_elem != n_elem) {
    throw ValidationError("qubo line counts do not match header");
  }
  return {dimension, std::move(linear), std::move(quadratic), offset};
}

void write_pattern_csv(std::ostream& os, const QuboProblem& q) {
  os << "i,j\n";
  for (const auto& [i, j] : qubo_pattern(q)) os << i << ',' << j << '\n';
}

}  // namespace rodqubo
