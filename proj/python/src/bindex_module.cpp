// Python bindings for the main operations.  Specs come in as JSON strings
// (the same formats the CLI reads); structured results go out as dicts built
// from the deterministic JSON serialization.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bindex/io.hpp"

namespace py = pybind11;
using namespace bindex;

namespace {

py::object to_py(const std::string& json_text) {
    return py::module_::import("json").attr("loads")(json_text);
}

BidiscPoint point(std::complex<double> z1, std::complex<double> z2) { return {z1, z2}; }

std::vector<BidiscPoint> point_grid(
    const std::vector<std::pair<std::complex<double>, std::complex<double>>>& pts) {
    std::vector<BidiscPoint> out;
    for (const auto& [a, b] : pts) out.push_back({a, b});
    return out;
}

std::vector<double> to_log_seq(const std::vector<double>& linear) {
    std::vector<double> out;
    for (double v : linear) out.push_back(v > 0.0 ? std::log(v) : kNegInf);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "joint-variable index computations on the unit bidisc";

    py::register_exception<Error>(m, "BindexError");

    py::class_<AnalyticFunction>(m, "Function")
        .def_static("from_json", &parse_function_spec, py::arg("spec"))
        .def("eval",
             [](const AnalyticFunction& f, std::complex<double> z1,
                std::complex<double> z2) { return f.eval(point(z1, z2)); })
        .def("derivative",
             [](const AnalyticFunction& f, int k1, int k2, std::complex<double> z1,
                std::complex<double> z2) { return f.derivative({k1, k2}, point(z1, z2)); })
        .def_property_readonly("label", &AnalyticFunction::label);

    py::class_<WeightField>(m, "Weight")
        .def_static("from_json", &parse_weight_spec, py::arg("spec"))
        .def("eval",
             [](const WeightField& w, int j, std::complex<double> z1,
                std::complex<double> z2) { return w.eval(j, point(z1, z2)); })
        .def_property_readonly("beta", &WeightField::beta);

    m.def("degree_enumerate", [](int n) {
        std::vector<std::pair<int, int>> out;
        for (const auto& k : degree_enumerate(n)) out.emplace_back(k.k1, k.k2);
        return out;
    });

    m.def(
        "validate_weight",
        [](const WeightField& w, int n_r, int n_theta, double r_max) {
            DiscGrid g{n_r, n_theta, r_max};
            return to_py(validation_to_json(validate_weight(w, {g, g})));
        },
        py::arg("weight"), py::arg("n_r") = 4, py::arg("n_theta") = 8,
        py::arg("r_max") = 0.95);

    m.def(
        "lambda_bounds",
        [](const WeightField& w, double r1, double r2, int refine) {
            BidiscGrid outer = default_lambda_outer();
            DiscGrid inner = default_lambda_inner();
            for (int i = 0; i < refine; ++i) {
                outer = outer.doubled();
                inner = inner.doubled();
            }
            return to_py(lambda_to_json(lambda_bounds(w, {r1, r2}, outer, inner)));
        },
        py::arg("weight"), py::arg("r1"), py::arg("r2"), py::arg("refine") = 0);

    m.def(
        "comparability",
        [](const WeightField& a, const WeightField& b, double cap) {
            return to_py(comparability_to_json(
                comparability(a, b, {{2, 4, 0.9}, {2, 4, 0.9}}, cap)));
        },
        py::arg("weight"), py::arg("other"), py::arg("spread_cap") = 1e6);

    m.def(
        "scaled_weight",
        [](const WeightField& w, double r1, double r2) {
            return scaled_weight(w, {r1, r2});
        },
        py::arg("weight"), py::arg("r1"), py::arg("r2"));

    m.def(
        "coeffs",
        [](const AnalyticFunction& f, std::complex<double> z1, std::complex<double> z2,
           int order) {
            auto t = taylor_any(f, point(z1, z2), order);
            std::vector<std::tuple<int, int, std::complex<double>>> out;
            for (const auto& k : degree_enumerate(order))
                out.emplace_back(k.k1, k.k2, t.coeff(k));
            return out;
        },
        py::arg("fn"), py::arg("z1"), py::arg("z2"), py::arg("order"));

    m.def(
        "local_index",
        [](const AnalyticFunction& f, const WeightField& w, std::complex<double> z1,
           std::complex<double> z2, int cap, double tol) {
            BidiscPoint z0 = point(z1, z2);
            return to_py(local_index_to_json(z0, local_index(f, w, z0, cap, tol)));
        },
        py::arg("fn"), py::arg("weight"), py::arg("z1"), py::arg("z2"), py::arg("cap") = 12,
        py::arg("tol") = 1e-9);

    m.def(
        "index_profile",
        [](const AnalyticFunction& f, const WeightField& w, std::vector<double> levels,
           int cap, int n_r, int n_theta, double tol) {
            return to_py(profile_to_json(
                index_profile(f, w, levels, cap, {n_r, n_theta, 1.0}, tol)));
        },
        py::arg("fn"), py::arg("weight"), py::arg("levels"), py::arg("cap") = 12,
        py::arg("n_r") = 8, py::arg("n_theta") = 8, py::arg("tol") = 1e-9);

    m.def(
        "maximal_term",
        [](const AnalyticFunction& f, std::complex<double> z1, std::complex<double> z2,
           int order, double r1, double r2) {
            auto t = taylor_any(f, point(z1, z2), order);
            return to_py(maximal_term_to_json(maximal_term(t, {r1, r2})));
        },
        py::arg("fn"), py::arg("z1"), py::arg("z2"), py::arg("order"), py::arg("r1"),
        py::arg("r2"));

    m.def(
        "max_modulus",
        [](const AnalyticFunction& f, std::complex<double> z1, std::complex<double> z2,
           double r1, double r2, int samples) {
            return to_py(max_modulus_to_json(
                max_modulus(f, point(z1, z2), {r1, r2}, samples)));
        },
        py::arg("fn"), py::arg("z1"), py::arg("z2"), py::arg("r1"), py::arg("r2"),
        py::arg("samples") = 64);

    m.def(
        "q_constant",
        [](int N, double r1, double r2, std::pair<double, double> lambda1,
           std::pair<double, double> lambda2) {
            LambdaEstimate est;
            est.lambda1 = {lambda1.first, lambda1.second};
            est.lambda2 = {lambda2.first, lambda2.second};
            return q_constant(N, {r1, r2}, est);
        },
        py::arg("N"), py::arg("r1"), py::arg("r2"), py::arg("lambda1"), py::arg("lambda2"));

    m.def(
        "check_local_dominance",
        [](const AnalyticFunction& f, const WeightField& w, std::complex<double> z1,
           std::complex<double> z2, double r1, double r2, int n0, int n_r, int n_theta,
           double tol) {
            return to_py(report_to_json(check_local_dominance(
                f, w, point(z1, z2), {r1, r2}, n0, {n_r, n_theta, 1.0}, tol)));
        },
        py::arg("fn"), py::arg("weight"), py::arg("z1"), py::arg("z2"), py::arg("r1"),
        py::arg("r2"), py::arg("n0"), py::arg("n_r") = 4, py::arg("n_theta") = 8,
        py::arg("tol") = 1e-9);

    m.def(
        "check_kth_max_modulus",
        [](const AnalyticFunction& f, std::complex<double> z1, std::complex<double> z2,
           double rho1, double rho2, int k1, int k2, int samples) {
            return to_py(report_to_json(check_kth_max_modulus(
                f, point(z1, z2), {rho1, rho2}, {k1, k2}, samples)));
        },
        py::arg("fn"), py::arg("z1"), py::arg("z2"), py::arg("rho1"), py::arg("rho2"),
        py::arg("k1"), py::arg("k2"), py::arg("samples") = 32);

    m.def(
        "check_pure_partials",
        [](const AnalyticFunction& f, std::complex<double> z1, std::complex<double> z2,
           double rho1, double rho2, int k10, int k20, int samples) {
            return to_py(report_to_json(check_pure_partials(
                f, point(z1, z2), {rho1, rho2}, k10, k20, samples)));
        },
        py::arg("fn"), py::arg("z1"), py::arg("z2"), py::arg("rho1"), py::arg("rho2"),
        py::arg("k10"), py::arg("k20"), py::arg("samples") = 32);

    m.def(
        "check_modulus_ratio",
        [](const AnalyticFunction& f, const WeightField& w,
           const std::vector<std::pair<std::complex<double>, std::complex<double>>>& grid,
           double rp1, double rp2, double rs1, double rs2, int samples) {
            return to_py(report_to_json(check_modulus_ratio(
                f, w, point_grid(grid), {rp1, rp2}, {rs1, rs2}, samples)));
        },
        py::arg("fn"), py::arg("weight"), py::arg("grid"), py::arg("rp1"), py::arg("rp2"),
        py::arg("rs1"), py::arg("rs2"), py::arg("samples") = 32);

    m.def("index_bound_from_ratio",
          [](double rp1, double rp2, double rs1, double rs2, double p1) {
              return index_bound_from_ratio({rp1, rp2}, {rs1, rs2}, p1);
          });

    m.def(
        "check_hayman",
        [](const AnalyticFunction& f, const WeightField& w,
           const std::vector<std::pair<std::complex<double>, std::complex<double>>>& grid,
           int p, std::optional<int> grid_index, double cap_tol) {
            return to_py(report_to_json(
                check_hayman(f, w, point_grid(grid), p, grid_index, cap_tol)));
        },
        py::arg("fn"), py::arg("weight"), py::arg("grid"), py::arg("p"),
        py::arg("grid_index") = py::none(), py::arg("cap_tol") = 1e-6);

    m.def(
        "check_tail_dominance",
        [](const AnalyticFunction& f, const WeightField& w,
           const std::vector<std::pair<std::complex<double>, std::complex<double>>>& grid,
           int N, double c, int cap) {
            return to_py(report_to_json(check_tail_dominance(f, w, point_grid(grid), N, c, cap)));
        },
        py::arg("fn"), py::arg("weight"), py::arg("grid"), py::arg("N"), py::arg("c"),
        py::arg("cap"));

    m.def(
        "find_main_polynomial",
        [](const std::vector<double>& a, int N, double d, double beta) {
            return to_py(main_poly_to_json(find_main_polynomial(to_log_seq(a), N, d, beta)));
        },
        py::arg("a"), py::arg("N"), py::arg("d") = 1.0, py::arg("beta") = 2.0);

    m.def(
        "verify_main_polynomial",
        [](const AnalyticFunction& f, const WeightField& w, std::complex<double> z1,
           std::complex<double> z2, double r1, double r2, int k0, int order, int samples) {
            BidiscPoint z0 = point(z1, z2);
            auto table = taylor_any(f, z0, order);
            return to_py(report_to_json(
                verify_main_polynomial(table, w, z0, {r1, r2}, k0, samples)));
        },
        py::arg("fn"), py::arg("weight"), py::arg("z1"), py::arg("z2"), py::arg("r1"),
        py::arg("r2"), py::arg("k0"), py::arg("order") = 8, py::arg("samples") = 32);
}
