#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chevkit/chevalley.hpp"
#include "chevkit/fixtures.hpp"
#include "chevkit/localtools.hpp"
#include "chevkit/pipeline.hpp"
#include "chevkit/rigidity.hpp"
#include "chevkit/spectral.hpp"

namespace py = pybind11;
using namespace chevkit;

// Results cross the boundary as JSON text; the Python side decodes them.
namespace {

std::string generator(const std::string& ring, const std::string& system, const std::string& op, const std::string& root,
                      const std::string& t, int i, int j) {
    const RootSystem& sys = RootSystem::parse(system);
    json spec{{"op", op}};
    if (op == "wij") {
        spec["i"] = i;
        spec["j"] = j;
    } else if (op != "identity") {
        spec["root"] = root;
        spec["t"] = t;
    }
    return generator_matrix(Ring::make(ring), sys, spec).to_json().dump();
}

std::string roots(const std::string& system) {
    const RootSystem& sys = RootSystem::parse(system);
    json names = json::array(), labels = json::array();
    for (int i = 0; i < sys.num_roots(); ++i) names.push_back(sys.root_name(i));
    for (int k = 0; k < sys.dim(); ++k) labels.push_back(sys.basis_label(k));
    return json{{"system", system}, {"roots", names}, {"basis_order", labels}, {"simples", sys.simple()}}.dump();
}

std::string verify(const std::string& system, const std::string& ring, const std::string& set, uint64_t seed, size_t samples) {
    json out = json::array();
    for (const auto& r : run_relations(RootSystem::parse(system), Ring::make(ring), set, seed, samples))
        out.push_back({{"relation", r.relation}, {"checked", r.checked}, {"failed", r.failed}, {"first_failure", r.first_failure}});
    return out.dump();
}

std::string diagonalize(const std::string& ring, const std::string& system, const std::string& root) {
    const RootSystem& sys = RootSystem::parse(system);
    auto d = diagonalize_q(Ring::make(ring), sys, sys.parse_root(root));
    return json{{"P", d.P.to_json()}, {"D", d.D.to_json()}, {"one", d.mult_one}, {"xi", d.mult_xi}, {"xi2", d.mult_xi2}}.dump();
}

std::string blocks(const std::string& id) {
    auto rep = compare_blocks(load_block_spec(id));
    return json{{"id", rep.id}, {"match", rep.match}, {"computed", rep.computed}, {"missing", rep.missing}}.dump();
}

std::string rigidity(const std::string& id, const std::string& field, int mu) {
    Ring f = Ring::make(field == "F4" ? "omega(Z/2)" : field == "F2" ? "Z/2" : field);
    return rigidity_check(load_condition_set(id), f, mu).to_json().dump();
}

std::string centralizer(const std::string& ring) {
    json j = unipotent_centralizer(Ring::make(ring), load_condition_set("centralizer6")).to_json();
    j.erase("family");
    return j.dump();
}

std::string split3(const std::string& matrix_json) {
    auto s = order3_split(Matrix::from_json(json::parse(matrix_json)));
    return json{{"rank0", s.rank0}, {"rank1", s.rank1}, {"e", s.e.to_json()}}.dump();
}

std::string witness(const std::string& a, const std::string& b) {
    return conjugacy_witness(Matrix::from_json(json::parse(a)), Matrix::from_json(json::parse(b))).to_json().dump();
}

std::string fixture(const std::string& id) { return compare_fixture(id).to_json().dump(); }

std::string pipeline(uint64_t seed, size_t samples, const std::vector<std::string>& only) {
    PipelineOptions opt;
    opt.seed = seed;
    opt.samples = samples;
    opt.only = only;
    return run_pipeline(opt).to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_chevkit, m) {
    m.doc() = "Chevalley group toolkit";

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<UnsupportedSystem>(m, "UnsupportedSystem", PyExc_ValueError);
    py::register_exception<UnknownFixture>(m, "UnknownFixture", PyExc_KeyError);
    py::register_exception<NotLocal>(m, "NotLocal", PyExc_ArithmeticError);
    py::register_exception<NonUnit>(m, "NonUnit", PyExc_ArithmeticError);
    py::register_exception<Order3Violation>(m, "Order3Violation", PyExc_ArithmeticError);
    py::register_exception<NotCongruent>(m, "NotCongruent", PyExc_ArithmeticError);

    m.def("ring_info", [](const std::string& spec) {
        Ring r = Ring::make(spec);
        json j{{"spec", r.spec()}, {"local", r.is_local()}, {"field", r.is_field()}};
        if (r.is_local()) j["residue_order"] = r.residue_field().field_order();
        return j.dump();
    });
    m.def("roots", &roots, py::arg("system"));
    m.def("generator", &generator, py::arg("ring"), py::arg("system"), py::arg("op"), py::arg("root") = "",
          py::arg("t") = "1", py::arg("i") = 0, py::arg("j") = 1);
    m.def("verify", &verify, py::arg("system"), py::arg("ring"), py::arg("relations") = "steinberg", py::arg("seed") = 7,
          py::arg("samples") = 200);
    m.def("diagonalize", &diagonalize, py::arg("ring"), py::arg("system"), py::arg("root"));
    m.def("blocks", &blocks, py::arg("id"));
    m.def("block_ids", &block_spec_ids);
    m.def("rigidity", &rigidity, py::arg("id"), py::arg("field") = "F2", py::arg("mu") = 1);
    m.def("condition_ids", &condition_set_ids);
    m.def("centralizer", &centralizer, py::arg("ring") = "Z/4");
    m.def("split3", &split3, py::arg("matrix"));
    m.def("conjugacy_witness", &witness, py::arg("a"), py::arg("b"));
    m.def("fixture", &fixture, py::arg("id"));
    m.def("fixture_ids", &fixture_ids);
    m.def("pipeline", &pipeline, py::arg("seed") = 7, py::arg("samples") = 200, py::arg("only") = std::vector<std::string>{});
}
