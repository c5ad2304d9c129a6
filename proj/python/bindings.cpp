#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bnl/expressions.hpp"
#include "bnl/json_io.hpp"
#include "bnl/optimize.hpp"
#include "bnl/polytopes.hpp"
#include "bnl/quantum.hpp"
#include "bnl/verify.hpp"

namespace py = pybind11;
using namespace bnl;

namespace {

Behavior to_behavior(int n, const std::vector<double>& table) {
  return Behavior(Scenario(n), table);
}

std::vector<double> to_list(const Behavior& b) { return {b.table().begin(), b.table().end()}; }

SearchMode parse_mode(const std::string& mode) {
  if (mode == "paper") return SearchMode::PaperParametrization;
  if (mode == "general") return SearchMode::GeneralPerParty;
  throw StructuralError("mode must be 'paper' or 'general'");
}

SearchConfig make_config(int restarts, std::uint64_t seed, const std::string& mode) {
  SearchConfig c;
  c.restarts = restarts;
  c.seed = seed;
  c.mode = parse_mode(mode);
  return c;
}

MeasurementParams make_params(double alpha, double beta, double gamma, std::vector<double> phi) {
  return {alpha, beta, gamma, std::move(phi)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Broadcast nonlocality: polytope bounds, membership LPs and GHZ quantum values";

  py::register_exception<Error>(m, "BnlError", PyExc_ValueError);

  m.def("builtin_names", &builtin_names);
  m.def("render", [](const std::string& spec, std::optional<int> n) {
    return render(expression_from_spec(spec, n));
  }, py::arg("expr"), py::arg("n") = py::none());

  m.def("evaluate", [](const std::string& spec, int n, const std::vector<double>& table) {
    return evaluate(expression_from_spec(spec, n), to_behavior(n, table));
  }, py::arg("expr"), py::arg("n"), py::arg("table"),
     "Value of an expression on a behavior table indexed (settings << n) | outcomes.");

  m.def("bound", [](const std::string& spec, const std::string& model, std::optional<int> n) {
    const auto e = expression_from_spec(spec, n);
    const auto r = bound(e, parse_model(model));
    return py::dict(py::arg("value") = r.value, py::arg("raw_value") = r.raw_value,
                    py::arg("witness") = to_list(r.witness));
  }, py::arg("expr"), py::arg("model"), py::arg("n") = py::none());

  m.def("vertex_count", [](const std::string& model, int n) {
    return enumerate_vertices(parse_model(model), Scenario(n)).vertices.size();
  }, py::arg("model"), py::arg("n") = 3);

  m.def("membership", [](const std::vector<double>& table, int n, const std::string& model,
                         double tol) {
    const Behavior b = to_behavior(n, table);
    const auto r = membership(b, parse_model(model), tol);
    return membership_to_json(r, b.scenario()).dump();
  }, py::arg("table"), py::arg("n"), py::arg("model"), py::arg("tol") = 1e-7,
     "Returns the JSON membership report as a string.");

  m.def("born_behavior", [](int n, double t, double alpha, double beta, double gamma,
                            std::vector<double> phi) {
    if (static_cast<int>(phi.size()) != n) throw StructuralError("phi needs one angle per party");
    return to_list(born_behavior(ghz_state(n, t),
                                 settings_from_params(make_params(alpha, beta, gamma, phi))));
  }, py::arg("n"), py::arg("t"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
     py::arg("phi"));

  m.def("quantum_value", [](const std::string& spec, int n, double t, double alpha, double beta,
                            double gamma, std::vector<double> phi) {
    return quantum_value(expression_from_spec(spec, n), ghz_state(n, t),
                         settings_from_params(make_params(alpha, beta, gamma, std::move(phi))));
  }, py::arg("expr"), py::arg("n"), py::arg("t"), py::arg("alpha"), py::arg("beta"),
     py::arg("gamma"), py::arg("phi"));

  m.def("maximize", [](const std::string& spec, int n, double t, int restarts,
                       std::uint64_t seed, const std::string& mode) {
    const auto r = maximize(expression_from_spec(spec, n), n, t, make_config(restarts, seed, mode));
    return py::make_tuple(r.value, r.parameters);
  }, py::arg("expr"), py::arg("n"), py::arg("t"), py::arg("restarts") = 64,
     py::arg("seed") = 1, py::arg("mode") = "paper");

  m.def("sweep", [](const std::string& spec, int n, std::optional<std::vector<double>> grid,
                    int restarts, std::uint64_t seed, const std::string& mode) {
    const auto g = grid ? *grid : default_grid();
    return curve_to_csv(sweep(expression_from_spec(spec, n), n, g, make_config(restarts, seed, mode)));
  }, py::arg("expr"), py::arg("n"), py::arg("grid") = py::none(), py::arg("restarts") = 64,
     py::arg("seed") = 1, py::arg("mode") = "paper", "Returns the curve as CSV text.");

  m.def("ghz_paper_correlation", [](int n) { return to_list(ghz_paper_correlation(n)); });
  m.def("broadcast_reproduction", [](int n) { return to_list(broadcast_reproduction(n)); });
  m.def("appendix_branch1", &appendix_branch1, py::arg("t"), py::arg("chi"), py::arg("gamma"));
  m.def("appendix_branch2", &appendix_branch2, py::arg("t"));
  m.def("r3_threshold", &r3_threshold);

  m.def("verify", [](std::uint64_t seed, std::vector<std::string> only) {
    VerifyOptions o;
    o.seed = seed;
    o.only = std::move(only);
    return run_paper_suite(o).to_json().dump();
  }, py::arg("seed") = 1, py::arg("only") = std::vector<std::string>{},
     "Runs the reproduction suite and returns the JSON report as a string.");
}
