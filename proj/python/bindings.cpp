#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "odesym/jet.hpp"
#include "odesym/numeric.hpp"
#include "odesym/parse.hpp"
#include "odesym/symmetry.hpp"

namespace py = pybind11;
using namespace odesym;

namespace {

std::vector<std::string> coeff_strings(const LinDiffOp& op) {
  std::vector<std::string> out;
  out.reserve(op.coeffs().size());
  for (const auto& c : op.coeffs()) out.push_back(to_string(c));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symbolic and numeric calculus of linear symmetries of linear ODE operators";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "ExprSyntaxError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<Expr>(m, "Expr")
      .def("__str__", [](const Expr& e) { return to_string(e); })
      .def("__repr__", [](const Expr& e) { return "Expr(\"" + to_string(e) + "\")"; })
      .def("__add__", [](const Expr& a, const Expr& b) { return normalize(a + b); })
      .def("__sub__", [](const Expr& a, const Expr& b) { return normalize(a - b); })
      .def("__mul__", [](const Expr& a, const Expr& b) { return normalize(a * b); })
      .def("__neg__", [](const Expr& a) { return normalize(-a); })
      .def("__eq__", [](const Expr& a, const Expr& b) { return equals(a, b); });

  m.def("parse_expr", [](const std::string& s) { return parse_expression(s); },
        "Parse an expression (x, p0..pk, function symbols with primes, sin/cos/exp)");
  m.def("normalize", &normalize);
  m.def("equals", &equals);
  m.def("diff", &diff, "Formal d/dx");
  m.def("substitute",
        [](const Expr& e, const std::map<std::string, Expr>& b) { return substitute(e, b); });
  m.def("eval_expr",
        [](const Expr& e, double x, const std::map<int, double>& jet,
           const std::map<std::string, std::function<double(int, double)>>& funcs) {
          EvalPoint p;
          p.x = x;
          p.jet = jet;
          p.funcs = funcs;
          return eval_numeric(e, p);
        },
        py::arg("e"), py::arg("x"), py::arg("jet") = std::map<int, double>{},
        py::arg("funcs") = std::map<std::string, std::function<double(int, double)>>{});

  py::class_<LinDiffOp>(m, "LinDiffOp")
      .def("__str__", [](const LinDiffOp& a) { return to_string(a); })
      .def("__repr__", [](const LinDiffOp& a) { return "LinDiffOp(\"" + to_string(a) + "\")"; })
      .def("__eq__", &op_equal)
      .def_property_readonly("order", [](const LinDiffOp& a) { return a.order(); })
      .def_property_readonly("is_zero", [](const LinDiffOp& a) { return a.is_zero(); })
      .def_property_readonly("is_monic", [](const LinDiffOp& a) { return a.is_monic(); })
      .def("coeff", [](const LinDiffOp& a, int i) { return a.coeff(i); })
      .def("coeff_strings", &coeff_strings);

  m.def("parse_op", [](const std::string& s) { return parse_op(s); });
  m.def("op_from_coeffs",
        [](const std::vector<Expr>& c) { return LinDiffOp::from_coeffs(c); });
  m.def("op_d", [](int k) { return LinDiffOp::d(k); }, py::arg("power") = 1);
  m.def("add_ops", [](const LinDiffOp& a, const LinDiffOp& b) { return add(a, b); });
  m.def("scale_op", [](const Expr& e, const LinDiffOp& a) { return scale(e, a); });
  m.def("compose", &compose);
  m.def("commutator", &commutator);
  m.def("adjoint", &adjoint);
  m.def("is_self_adjoint", &is_self_adjoint);
  m.def("is_skew_adjoint", &is_skew_adjoint);
  m.def("apply_op", [](const LinDiffOp& a, const Expr& h) { return apply(a, h); });
  m.def("divide", [](const LinDiffOp& a, const LinDiffOp& l) {
    DivisionResult r = divide(a, l);
    return py::make_tuple(r.quotient, r.remainder);
  });

  // jet calculus
  py::class_<JetContext>(m, "JetContext")
      .def(py::init<int, Expr>(), py::arg("k"), py::arg("F"))
      .def_readonly("k", &JetContext::k)
      .def_readonly("F", &JetContext::rhs);
  m.def("total_derivative", &total_derivative);
  m.def("shuffle_field", &shuffle_field);
  m.def("lie_equation_residual", &lie_equation_residual);
  m.def("poisson_lie_bracket", &poisson_lie_bracket);
  m.def("linear_genfunc_to_op", &linear_genfunc_to_op);
  m.def("op_to_linear_genfunc", &op_to_linear_genfunc);
  m.def("affine_genfunc_to_point_field", &affine_genfunc_to_point_field);
  m.def("jet_context_for", &jet_context_for);

  // symmetry analysis
  m.def("symmetry_quotient", [](const LinDiffOp& l, const LinDiffOp& d) {
    SymmetryTest t = symmetry_quotient(l, d);
    return py::make_tuple(t.quotient, t.remainder);
  });
  m.def("symmetry_bracket", &symmetry_bracket);
  py::class_<GradedComponent>(m, "GradedComponent")
      .def_readonly("op", &GradedComponent::op)
      .def_readonly("parity", &GradedComponent::parity)
      .def_readonly("quotient", &GradedComponent::quotient);
  m.def("grade", &grade);
  py::class_<EvenConditionReport>(m, "EvenConditionReport")
      .def_readonly("a0_name", &EvenConditionReport::a0_name)
      .def_readonly("a1_name", &EvenConditionReport::a1_name)
      .def_readonly("w_name", &EvenConditionReport::w_name)
      .def_readonly("a0_rhs", &EvenConditionReport::a0_rhs)
      .def_readonly("constraints", &EvenConditionReport::constraints);
  m.def("derive_even_conditions", &derive_even_conditions);
  py::class_<OddConditionReport>(m, "OddConditionReport")
      .def_readonly("a1_constraint", &OddConditionReport::a1_constraint)
      .def_readonly("a0_constraint", &OddConditionReport::a0_constraint);
  m.def("derive_odd_conditions", &derive_odd_conditions);
  m.def("ltilde_paper", &ltilde_paper);
  m.def("ltilde_schrodinger", &ltilde_schrodinger);
  m.def("normal_form_potential", &normal_form_potential);
  m.def("even_symmetry_from_w", &even_symmetry_from_w);
  m.def("constraint_to_operator", &constraint_to_operator);
  m.def("structure_constants",
        [](const LinDiffOp& l, const std::vector<LinDiffOp>& basis) {
          auto c = structure_constants(l, basis);
          std::vector<std::vector<std::vector<std::string>>> out(c.size());
          for (size_t i = 0; i < c.size(); ++i) {
            out[i].resize(c[i].size());
            for (size_t j = 0; j < c[i].size(); ++j)
              for (const auto& r : c[i][j]) out[i][j].push_back(r.to_string());
          }
          return out;
        },
        "Structure constants as exact rational strings, c[i][j][m]");

  // numeric oracles
  py::class_<Grid>(m, "Grid")
      .def(py::init([](double x0, double x1, double step) {
             return Grid{x0, x1, step};
           }),
           py::arg("x0") = 0.0, py::arg("x1") = 1.0, py::arg("step") = 1e-3)
      .def_readwrite("x0", &Grid::x0)
      .def_readwrite("x1", &Grid::x1)
      .def_readwrite("step", &Grid::step)
      .def("sample_points", &Grid::sample_points);
  m.def("integrate_kernel",
        [](const LinDiffOp& l, const std::vector<double>& init, const Grid& grid) {
          NumericSolution s = integrate_kernel(l, init, grid);
          return py::make_tuple(s.xs(), s.states());
        },
        "RK4-integrate L(y) = 0; returns (xs, states)");
  m.def("kernel_map_residual",
        [](const LinDiffOp& l, const LinDiffOp& delta, const std::vector<double>& init,
           const Grid& grid) { return kernel_map_residual(l, delta, init, grid); });
  m.def("compare_ltilde_variants", [](double h, const Grid& grid) {
    VariantReport r = compare_ltilde_variants(h, grid);
    py::list rows;
    for (const auto& row : r.rows) {
      py::dict d;
      d["variant"] = row.variant;
      d["w"] = row.w;
      d["init"] = row.init;
      d["max_residual"] = row.max_residual;
      rows.append(d);
    }
    return rows;
  });
  m.def("gauge_transport_residual",
        [](const Expr& g, const Expr& h, const std::vector<double>& init, const Grid& grid) {
          return gauge_transport_residual(g, h, init, grid);
        });
}
