#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dpw/catalog.hpp"
#include "dpw/complex.hpp"
#include "dpw/strata.hpp"
#include "dpw/walls.hpp"

namespace py = pybind11;
using namespace dpw;

namespace {

FiberComplex fiber_at(const std::string& type, const std::optional<std::string>& weight) {
    return weight ? chamber_model(type, parse_rational(*weight)) : build_fiber(type);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact boundary complexes, stable fibers and weight walls";
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("roots", [](int n) {
        std::vector<std::string> out;
        for (auto& r : enumerate_roots(n)) out.push_back(root_label(r));
        return out;
    });
    m.def("lines", [](int n) {
        std::vector<std::string> out;
        for (auto& l : enumerate_lines(n)) out.push_back(l.text());
        return out;
    });
    m.def("subsystems", [](int n, const std::string& type) {
        std::vector<std::vector<std::string>> out;
        for (auto& s : enumerate_vertex_subsystems(n, type)) {
            std::vector<std::string> labels;
            for (auto& r : s.roots) labels.push_back(root_label(r));
            out.push_back(labels);
        }
        return out;
    });
    m.def("count_strata", [](const std::string& label) { return count_strata(label); });
    m.def("eckardt_count", [] { return enumerate_eckardt_triples().size(); });
    m.def("catalog_labels", &catalog_labels, py::arg("degree") = 0);

    m.def(
        "fiber_json", [](const std::string& type, const std::optional<std::string>& weight) {
            return to_json(fiber_at(type, weight)).dump();
        },
        py::arg("type"), py::arg("weight") = py::none());
    m.def(
        "restrictions", [](const std::string& type, const std::optional<std::string>& weight) {
            auto f = fiber_at(type, weight);
            std::vector<std::pair<std::string, std::string>> out;
            for (auto& c : f.components) out.push_back({c.role, polarization_restriction(f, c.id).text(c.basis)});
            return out;
        },
        py::arg("type"), py::arg("weight") = py::none());
    m.def("total_degree", [](const std::string& fiber_json, const std::string& c) {
        return to_string(total_degree(fiber_from_json(nlohmann::json::parse(fiber_json)), parse_rational(c)));
    });
    m.def("canonical_form", [](const std::string& fiber_json) {
        return canonical_form(fiber_from_json(nlohmann::json::parse(fiber_json)));
    });
    m.def(
        "walls_json", [](int degree, int threads) {
            py::gil_scoped_release release;
            return to_json(compute_walls(degree, threads)).dump();
        },
        py::arg("degree"), py::arg("threads") = 1);
    m.def("classify_wall", [](int degree, const std::string& wall) {
        return classify_wall(degree, parse_rational(wall)).tag;
    });
}
