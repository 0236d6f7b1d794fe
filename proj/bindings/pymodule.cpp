#include "magcrit/acceptance.hpp"
#include "magcrit/coefficients.hpp"
#include "magcrit/critical_field.hpp"
#include "magcrit/shooting.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace magcrit;

namespace {

py::dict record_to_dict(const CriticalFieldRecord& r)
{
    py::dict d;
    d["nu"] = r.nu;
    d["Z"] = r.Z;
    d["mu"] = r.mu;
    d["B"] = r.B_dimensionless;
    d["log10_tesla"] = r.log10_tesla;
    d["source"] = to_string(r.source);
    return d;
}

Variant parse_variant(const std::string& name)
{
    if (name == "main") return Variant::Main;
    if (name == "lower") return Variant::Lower;
    if (name == "upper") return Variant::Upper;
    throw std::invalid_argument("variant must be one of: main, lower, upper");
}

FieldSource parse_source(const std::string& name)
{
    if (name == "landau") return FieldSource::Landau;
    if (name == "unconstrained") return FieldSource::Unconstrained;
    if (name == "lower_bound") return FieldSource::LowerBound;
    if (name == "upper_bound") return FieldSource::UpperBound;
    throw std::invalid_argument(
        "source must be one of: landau, unconstrained, lower_bound, upper_bound");
}

} // namespace

PYBIND11_MODULE(_magcrit, m)
{
    m.doc() = "Critical magnetic field of a relativistic hydrogenic atom";
    m.attr("__version__") = MAGCRIT_VERSION;
    m.attr("ALPHA_INVERSE") = kAlphaInverse;
    m.attr("TESLA_FACTOR") = kTeslaFactor;

    m.def("erfcx", &erfcx, py::arg("x"));
    m.def(
        "coefficients",
        [](double z) {
            const auto c = eval_coefficients(z);
            py::dict d;
            d["z"] = c.z;
            d["a"] = c.a;
            d["b"] = c.b;
            d["a_prime"] = c.a_prime;
            return d;
        },
        py::arg("z"));
    m.def(
        "landau_moment",
        [](int ell, double z, const std::string& kind) {
            if (kind != "inverse_radius" && kind != "radius")
                throw std::invalid_argument("kind must be 'inverse_radius' or 'radius'");
            return eval_landau_moment(
                ell, z, kind == "radius" ? MomentKind::Radius : MomentKind::InverseRadius);
        },
        py::arg("ell"), py::arg("z"), py::arg("kind") = "inverse_radius");

    m.def(
        "landau_eigenvalue",
        [](double nu, const std::string& variant, double z_max, double tol) {
            SturmLiouvilleProblem pb{nu, parse_variant(variant), z_max};
            return find_ground_eigenvalue(pb, tol).mu;
        },
        py::arg("nu"), py::arg("variant") = "main", py::arg("z_max") = 170.0,
        py::arg("tol") = 1e-11);
    m.def(
        "landau_eigenvalue_converged",
        [](double nu, const std::string& variant, double tol) {
            return find_ground_eigenvalue_converged(nu, parse_variant(variant), tol).mu;
        },
        py::arg("nu"), py::arg("variant") = "main", py::arg("tol") = 1e-11);

    m.def(
        "unconstrained_eigenvalue",
        [](double nu) { return solve_unconstrained(nu).spectral.mu; }, py::arg("nu"),
        py::call_guard<py::gil_scoped_release>());

    m.def("critical_field_from_mu", &critical_field_from_mu, py::arg("mu"));
    m.def("to_tesla_log10", &to_tesla_log10, py::arg("B"));
    m.def(
        "record",
        [](double nu, double mu, const std::string& source) {
            return record_to_dict(make_record(nu, mu, parse_source(source)));
        },
        py::arg("nu"), py::arg("mu"), py::arg("source") = "landau");

    m.def("landau_table_nu_values", &table1_nu_values);
    m.def("unconstrained_table_nu_values", &table2_nu_values);
    m.def(
        "build_table",
        [](const std::vector<double>& nu_list, const std::string& source, double z_max,
           double shooting_tol) {
            TableOptions opt;
            opt.z_max = z_max;
            opt.shooting_tol = shooting_tol;
            py::list out;
            for (const auto& row : build_table(nu_list, parse_source(source), opt)) {
                py::dict d = record_to_dict(row.record);
                d["ok"] = row.ok;
                if (!row.ok) d["error"] = row.error;
                out.append(d);
            }
            return out;
        },
        py::arg("nu_list"), py::arg("source") = "landau", py::arg("z_max") = 170.0,
        py::arg("shooting_tol") = 1e-11);

    m.def(
        "comparison_ratio",
        [](const std::vector<double>& nu_list) {
            py::list out;
            for (const auto& p : comparison_ratio(nu_list, {})) {
                py::dict d;
                d["nu"] = p.nu;
                d["ratio"] = p.ratio;
                d["ok"] = p.ok;
                if (!p.ok) d["error"] = p.error;
                out.append(d);
            }
            return out;
        },
        py::arg("nu_list"));

    m.def(
        "asymptotic_diagnostic",
        [](const std::vector<double>& nu_list, const std::string& variant) {
            py::list out;
            for (const auto& p : asymptotic_diagnostic(nu_list, parse_variant(variant))) {
                py::dict d;
                d["nu"] = p.nu;
                d["mu"] = p.mu;
                d["product"] = p.product;
                d["ok"] = p.ok;
                if (!p.ok) d["error"] = p.error;
                out.append(d);
            }
            return out;
        },
        py::arg("nu_list"), py::arg("variant") = "main");

    m.def("run_acceptance", []() {
        py::list out;
        for (const auto& r : run_acceptance()) {
            py::dict d;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    });
}
