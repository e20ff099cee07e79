// Python bindings: the _core extension of the stablepi1 package.

#include "stablepi1/errors.hpp"
#include "stablepi1/fpgroup.hpp"
#include "stablepi1/intlin.hpp"
#include "stablepi1/scenarios.hpp"
#include "stablepi1/torus.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace stablepi1;

namespace {

py::int_ to_py(const Integer& v) {
    std::string digits = v.get_str();
    return py::reinterpret_steal<py::int_>(PyLong_FromString(digits.c_str(), nullptr, 10));
}

Integer from_py(const py::handle& h) {
    if (!py::isinstance<py::int_>(h)) throw py::type_error("matrix entries must be integers");
    return Integer(py::str(h).cast<std::string>());
}

IntMatrix matrix_from_py(const py::sequence& rows, std::size_t cols = 0) {
    std::vector<std::vector<Integer>> out;
    for (const auto& r : rows) {
        std::vector<Integer> row;
        for (const auto& x : r.cast<py::sequence>()) row.push_back(from_py(x));
        if (!out.empty() && row.size() != out.front().size()) throw py::value_error("rows have different lengths");
        out.push_back(std::move(row));
    }
    return IntMatrix::from_rows(out, cols);
}

py::list matrix_to_py(const IntMatrix& m) {
    py::list rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
        rows.append(row);
    }
    return rows;
}

py::dict invariants_to_py(const AbelianInvariants& a) {
    py::list torsion;
    for (const auto& t : a.torsion) torsion.append(to_py(t));
    py::dict d;
    d["free_rank"] = a.free_rank;
    d["torsion"] = torsion;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact fundamental-group computations for stable Godeaux surfaces";

    py::register_exception<Error>(m, "Error");
    py::register_exception<CosetLimitExceeded>(m, "CosetLimitExceeded", m.attr("Error"));
    py::register_exception<ValidationError>(m, "ValidationError", m.attr("Error"));
    py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));

    m.def("smith_normal_form", [](const py::sequence& rows) {
        SnfResult r = smith_normal_form(matrix_from_py(rows));
        py::dict d;
        d["D"] = matrix_to_py(r.D);
        d["U"] = matrix_to_py(r.U);
        d["V"] = matrix_to_py(r.V);
        return d;
    }, py::arg("rows"));
    m.def("cokernel_invariants", [](const py::sequence& rows, std::size_t rank) {
        return invariants_to_py(cokernel_invariants(matrix_from_py(rows, rank), rank));
    }, py::arg("rows"), py::arg("rank"));
    m.def("hermite_normal_form", [](const py::sequence& rows) {
        return matrix_to_py(hermite_normal_form(matrix_from_py(rows)));
    }, py::arg("rows"));

    py::class_<Presentation>(m, "Presentation")
        .def(py::init([](const std::vector<std::string>& names, const std::vector<std::string>& relators) {
            return parse_presentation(names, relators);
        }), py::arg("generators"), py::arg("relators"))
        .def_property_readonly("generators", &Presentation::generator_names)
        .def_property_readonly("relators", [](const Presentation& p) {
            std::vector<std::string> out;
            for (const auto& r : p.relators()) out.push_back(p.format(r));
            return out;
        })
        .def("abelianization", [](const Presentation& p) { return invariants_to_py(abelianization(p)); })
        .def("order", [](const Presentation& p, std::size_t max_cosets) {
            py::gil_scoped_release release;
            return todd_coxeter_order(p, max_cosets);
        }, py::arg("max_cosets") = default_max_cosets)
        .def("is_cyclic_of_order", [](const Presentation& p, std::size_t n, std::size_t max_cosets) {
            py::gil_scoped_release release;
            return is_cyclic_of_order(p, n, max_cosets);
        }, py::arg("n"), py::arg("max_cosets") = default_max_cosets)
        .def("simplify", &tietze_simplify)
        .def("__str__", &Presentation::to_string)
        .def("__repr__", [](const Presentation& p) { return "Presentation(" + p.to_string() + ")"; });

    m.def("twisting_number", [](const std::string& parity, long d, long d_prime) {
        return twisting_number({d, d_prime, parity == "odd" ? Parity::odd : Parity::even, 0});
    }, py::arg("parity"), py::arg("deg_phi"), py::arg("deg_phi_prime"));
    m.def("eplus_presentation", [](const std::string& parity, long d, long d_prime, std::size_t glue) {
        return eplus_presentation({d, d_prime, parity == "odd" ? Parity::odd : Parity::even, glue});
    }, py::arg("parity"), py::arg("deg_phi"), py::arg("deg_phi_prime"), py::arg("glue") = 0);

    m.def("run_scenario_json", [](const std::string& path, std::size_t max_cosets) {
        Scenario s = load_scenario(path);
        py::gil_scoped_release release;
        return report_json(run_scenario(s, {max_cosets}), -1);
    }, py::arg("path"), py::arg("max_cosets") = default_max_cosets);
    m.def("verify_catalogue_json", [](const std::string& dir, std::size_t max_cosets) {
        py::gil_scoped_release release;
        return catalogue_json(verify_catalogue(dir, {max_cosets}), -1);
    }, py::arg("directory"), py::arg("max_cosets") = default_max_cosets);
}
