#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "backdoor/cli.hpp"
#include "backdoor/criterion.hpp"
#include "backdoor/search.hpp"
#include "backdoor/separation.hpp"
#include "backdoor/visibility.hpp"

namespace py = pybind11;
using namespace backdoor;

namespace {

VertexSet lookup(const MixedGraph& g, const std::vector<std::string>& names) {
    return vertex_set(g, names);
}

py::object maybe_set(const MixedGraph& g, const std::optional<VertexSet>& s) {
    if (!s) return py::none();
    return py::cast(labels(g, *s));
}

py::dict search_dict(const MixedGraph& g, const BackdoorSearch& s) {
    py::dict d;
    d["set"] = maybe_set(g, s.set);
    d["adjacent"] = s.adjacent;
    d["dsep"] = labels(g, s.dsep);
    d["possible_descendants"] = labels(g, s.possible_de);
    d["intersection"] = labels(g, s.intersection);
    d["representative"] = serialize(s.representative.full);
    d["lowered"] = serialize(s.representative.lowered);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Generalized back-door adjustment sets for DAGs, CPDAGs, MAGs and PAGs";

    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);

    py::class_<MixedGraph>(m, "Graph")
        .def_static("parse", [](const std::string& text) { return parse_graph(text); }, py::arg("text"))
        .def_property_readonly("kind", [](const MixedGraph& g) { return std::string(to_string(g.kind())); })
        .def_property_readonly("vertices", &MixedGraph::names)
        .def("serialize", [](const MixedGraph& g) { return serialize(g); })
        .def("__len__", &MixedGraph::size)
        .def("__eq__", [](const MixedGraph& a, const MixedGraph& b) { return a == b; })
        .def("__repr__", [](const MixedGraph& g) {
            return "<Graph " + std::string(to_string(g.kind())) + " with " + std::to_string(g.size()) + " vertices>";
        });

    m.def(
        "find_backdoor_set",
        [](const MixedGraph& g, const std::string& x, const std::string& y) {
            return search_dict(g, find_backdoor_set(g, g.index(x), g.index(y)));
        },
        py::arg("graph"), py::arg("x"), py::arg("y"));

    m.def(
        "minimal_backdoor_sets",
        [](const MixedGraph& g, const std::string& x, const std::string& y) {
            std::vector<std::vector<std::string>> out;
            for (const VertexSet& s : minimal_backdoor_sets(g, g.index(x), g.index(y))) out.push_back(labels(g, s));
            return out;
        },
        py::arg("graph"), py::arg("x"), py::arg("y"));

    m.def(
        "check",
        [](const MixedGraph& g, const std::vector<std::string>& x, const std::vector<std::string>& y,
           const std::vector<std::string>& w) {
            CriterionReport r = check_generalized_backdoor(g, lookup(g, x), lookup(g, y), lookup(g, w));
            py::dict d;
            d["verdict"] = r.verdict;
            d["failed"] = r.failed ? py::cast(std::string(to_string(*r.failed))) : py::none();
            d["vertex"] = r.vertex ? py::cast(g.name(*r.vertex)) : py::none();
            d["path"] = r.path ? py::cast(format_path(g, *r.path)) : py::none();
            return d;
        },
        py::arg("graph"), py::arg("x"), py::arg("y"), py::arg("w"));

    m.def(
        "m_separated",
        [](const MixedGraph& g, const std::string& x, const std::string& y, const std::vector<std::string>& z) {
            return m_separated(g, g.index(x), g.index(y), lookup(g, z));
        },
        py::arg("graph"), py::arg("x"), py::arg("y"), py::arg("z"));

    m.def(
        "d_sep_set",
        [](const MixedGraph& g, const std::string& x, const std::string& y) {
            return labels(g, d_sep_set(g, g.index(x), g.index(y)));
        },
        py::arg("graph"), py::arg("x"), py::arg("y"));

    m.def(
        "is_visible",
        [](const MixedGraph& g, const std::string& a, const std::string& b) {
            return is_visible(g, g.index(a), g.index(b));
        },
        py::arg("graph"), py::arg("a"), py::arg("b"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
