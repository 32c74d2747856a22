#include <pybind11/pybind11.h>

#include "pvss/sysfile.hpp"

#include <string>

namespace py = pybind11;
using namespace pvss;

namespace {

ActionSpec parse_and_validate(const std::string& text, bool strict) {
    ActionSpec spec = parse_system_file(text);
    spec.strict = strict;
    validate_spec(spec);
    return spec;
}

nlohmann::json groups_json(const std::vector<FgAbGroup>& gs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& g : gs) out.push_back(group_json(g));
    return out;
}

}  // namespace

PYBIND11_MODULE(_pvss, m) {
    m.doc() = "exact spectral-sequence engine for Z^n actions on K-theory";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);

    m.def(
        "validate",
        [](const std::string& text) { parse_and_validate(text, false); },
        py::arg("text"), "Parse and validate a system description; raises on problems.");

    m.def(
        "pages_json",
        [](const std::string& text, bool strict) {
            ActionSpec spec = parse_and_validate(text, strict);
            return pages_json(run_pages(spec), text).dump();
        },
        py::arg("text"), py::arg("strict") = false,
        "All pages E_1 .. E_{n+1} of the spectral sequence, as a JSON string.");

    m.def(
        "crossed_json",
        [](const std::string& text, bool strict, bool iterated) {
            ActionSpec spec = parse_and_validate(text, strict);
            CrossedResult res = iterated ? iterated_pv(spec) : crossed_product_k(spec);
            return crossed_json(res, text).dump();
        },
        py::arg("text"), py::arg("strict") = false, py::arg("iterated") = false,
        "K-theory of the crossed product, as a JSON string. With iterated=True "
        "uses the iterated Pimsner-Voiculescu route (n = 2, K-trivial only).");

    m.def(
        "cohomology_json",
        [](const std::string& text) {
            ActionSpec spec = parse_and_validate(text, false);
            nlohmann::json out;
            out["K0"] = groups_json(group_cohomology(spec.n, spec.k0, spec.action0));
            out["K1"] = groups_json(group_cohomology(spec.n, spec.k1, spec.action1));
            return out.dump();
        },
        py::arg("text"),
        "Group cohomology H^p(Z^n; K_q) for the two coefficient modules, as JSON.");

    m.def(
        "snf_json",
        [](const std::string& text) {
            SmithForm f = smith_normal_form(parse_bare_matrix(text));
            nlohmann::json out;
            out["d"] = matrix_json(f.d);
            out["u"] = matrix_json(f.u);
            out["v"] = matrix_json(f.v);
            out["rank"] = f.rank;
            return out.dump();
        },
        py::arg("matrix"),
        "Smith normal form of a bare integer matrix (JSON array of rows): "
        "u * m * v = d with u, v unimodular.");
}
