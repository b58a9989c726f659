// Python module _logres: documents go in and out as JSON text, wrapped into dicts by logres/__init__.py.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "logres/io.hpp"
#include "logres/lieoperad.hpp"
#include "logres/suites.hpp"

namespace py = pybind11;
using namespace logres;

namespace {

std::string run(const std::string& name, std::optional<std::uint64_t> characteristic, std::optional<std::string> g,
                std::optional<int> n, std::optional<int> bound, std::optional<int> trials, std::uint64_t seed, int jobs,
                const std::string& input) {
  RunConfig c;
  c.characteristic = characteristic;
  c.g = g;
  c.n = n;
  c.bound = bound;
  c.trials = trials;
  c.seed = seed;
  c.jobs = jobs;
  c.input = input;
  SuiteReport r;
  {
    py::gil_scoped_release nogil;
    r = run_suite(name, c);
  }
  json j = r.to_json();
  if (!r.output.is_null()) j["output"] = r.output;
  return j.dump();
}

std::string membership(const std::string& doc) {
  auto d = io::jet_from_json(io::parse(doc));
  auto m = check_membership(d.tuple, d.g);
  json j{{"ok", m.ok}};
  if (!m.ok) j.update({{"failure", m.failure}, {"order", m.order}, {"slots", m.slots}, {"detail", m.detail}});
  return j.dump();
}

std::string pair_word(const std::string& doc, const std::string& word) {
  auto d = io::jet_from_json(io::parse(doc));
  auto w = io::word_from_json(d.g, io::parse(word));
  return io::to_json(pair_phi_k(d.g, w, d.tuple)).dump();
}

}  // namespace

PYBIND11_MODULE(_logres, m) {
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);

  m.def("suite_names", &suite_names);
  m.def("run_suite", &run, py::arg("name"), py::arg("characteristic") = py::none(), py::arg("g") = py::none(),
        py::arg("n") = py::none(), py::arg("bound") = py::none(), py::arg("trials") = py::none(), py::arg("seed") = 1,
        py::arg("jobs") = 1, py::arg("input") = "");
  m.def("lie_dim", [](int n, std::uint64_t p) { return lie_dim(n, FieldSpec(p)); }, py::arg("n"), py::arg("characteristic") = 0);
  m.def("membership", &membership, py::arg("document"));
  m.def("pair", &pair_word, py::arg("document"), py::arg("word"));
}
