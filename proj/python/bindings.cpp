// Python bindings. Lattices are exposed as objects; the command-level
// checks return their JSON reports as strings (parsed on the Python side).
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmon/cli.hpp"
#include "qmon/greechie.hpp"
#include "qmon/quantifiers.hpp"
#include "qmon/subspace.hpp"

namespace py = pybind11;
using namespace qmon;

namespace {

cli::Options make_options(std::uint64_t seed, std::size_t max_size, bool oml, std::size_t dim,
                          std::vector<std::size_t> layout, std::size_t max_blocks, bool boolean_only,
                          std::size_t max_atoms) {
  cli::Options o;
  o.seed = seed;
  o.max_size = max_size;
  o.require_oml = oml;
  o.dim = dim;
  o.layout = std::move(layout);
  o.max_blocks = max_blocks;
  o.boolean_only = boolean_only;
  o.max_atoms = max_atoms;
  return o;
}

py::tuple report_pair(const cli::Report& r) { return py::make_tuple(r.exit_code(), r.to_json(false).dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite orthomodular lattices, quantifiers and tensor subspaces";

  auto base = py::register_exception<Error>(m, "QmonError", PyExc_ValueError);
  py::register_exception<StructureError>(m, "StructureError", base.ptr());
  py::register_exception<SizeGuardError>(m, "SizeGuardError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<FiniteOL>(m, "Lattice")
      .def_static("from_json", [](const std::string& text) { return io::lattice_from_json(io::json::parse(text)); })
      .def("to_json", [](const FiniteOL& l) { return io::lattice_to_json(l).dump(); })
      .def("__len__", &FiniteOL::size)
      .def_property_readonly("zero", &FiniteOL::zero)
      .def_property_readonly("one", &FiniteOL::one)
      .def_property_readonly("labels", &FiniteOL::labels)
      .def("leq", &FiniteOL::leq)
      .def("meet", &FiniteOL::meet)
      .def("join", &FiniteOL::join)
      .def("ortho", &FiniteOL::ortho)
      .def("find", &FiniteOL::find)
      .def("covers", &FiniteOL::covers);

  m.def("boolean", &lattices::boolean, py::arg("atoms"));
  m.def("mo", &lattices::mo, py::arg("n"));
  m.def("hexagon", &lattices::hexagon);
  m.def("greechie", [](const std::string& text) { return build_greechie(parse_greechie(text)); });

  m.def("ol_violations", [](const FiniteOL& l) {
    std::vector<std::pair<std::string, std::vector<Element>>> out;
    auto r = validate_ortholattice(l);
    for (const auto& v : r.structural) out.emplace_back(v.axiom, v.witness);
    for (const auto& v : r.axioms) out.emplace_back(v.axiom, v.witness);
    return out;
  });
  m.def("is_orthomodular", [](const FiniteOL& l) { return check_orthomodular(l).is_oml; });
  m.def("blocks", [](const FiniteOL& l) { return blocks(l); });
  m.def("center", [](const FiniteOL& l) { return center(l); });
  m.def("sasaki_product", &sasaki_product);
  m.def("sasaki_hook", &sasaki_hook);
  m.def("subalgebras", [](const FiniteOL& l) { return all_subalgebras(l); });

  m.def("quantifier_from_subalgebra", &quantifier_from_subalgebra);
  m.def("fixpoints", &fixpoint_subalgebra);
  m.def("is_quantifier", &is_quantifier);
  m.def("quantifier_axioms", [](const FiniteOL& l, const UnaryMap& e) {
    std::vector<std::tuple<std::string, bool, std::vector<Element>>> out;
    for (const auto& a : check_quantifier(l, e).axioms) out.emplace_back(a.name, a.holds, a.witness);
    return out;
  });

  m.def("exists_factor", [](const std::string& subspace_json, std::size_t i) {
    auto f = io::subspace_from_json(io::json::parse(subspace_json));
    if (f.subspaces.size() != 1) throw ParseError("expected a single subspace");
    return io::subspace_to_json(f.layout, exists_factor(f.layout, i, f.subspaces[0])).dump();
  });

  m.def("check", [](const std::string& kind, const std::string& path, std::uint64_t seed, std::size_t max_size,
                    bool oml) {
    return report_pair(cli::cmd_check(kind, path, make_options(seed, max_size, oml, 0, {}, 4, false, 4)));
  }, py::arg("kind"), py::arg("path"), py::arg("seed") = 0, py::arg("max_size") = kDefaultMaxElements,
        py::arg("oml") = false);
  m.def("repro", [](const std::string& name, std::size_t dim, std::vector<std::size_t> layout) {
    return report_pair(cli::cmd_repro(name, make_options(0, kDefaultMaxElements, false, dim, std::move(layout), 4, false, 4)));
  }, py::arg("name"), py::arg("dim") = 0, py::arg("layout") = std::vector<std::size_t>{});
  m.def("search", [](const std::string& target, std::size_t max_blocks, bool boolean_only, std::size_t max_atoms,
                     std::size_t dim, std::uint64_t seed) {
    return report_pair(cli::cmd_search(target, make_options(seed, kDefaultMaxElements, false, dim, {}, max_blocks,
                                                            boolean_only, max_atoms)));
  }, py::arg("target"), py::arg("max_blocks") = 4, py::arg("boolean_only") = false, py::arg("max_atoms") = 4,
        py::arg("dim") = 0, py::arg("seed") = 0);
}
