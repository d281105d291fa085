#include <doctest.h>

#include <cmath>

#include "odesym/numeric.hpp"
#include "odesym/parse.hpp"
#include "odesym/symmetry.hpp"

using namespace odesym;

namespace {
Expr P(const char* s) { return parse_expression(s); }
LinDiffOp Op(const char* s) { return parse_op(s); }

NumericSolution integrate_sine(double step, double x1) {
  return integrate_linear_ode({CoeffFn::constant(1.0), CoeffFn::constant(0.0)}, {0.0, 1.0},
                              Grid{0.0, x1, step});
}

double max_sine_error(double step) {
  NumericSolution s = integrate_sine(step, 1.5);
  double mx = 0;
  for (size_t i = 0; i < s.xs().size(); ++i)
    mx = std::max(mx, std::abs(s.states()[i][0] - std::sin(s.xs()[i])));
  return mx;
}
}  // namespace

TEST_CASE("RK4 integrates the sine equation") {
  NumericSolution s = integrate_sine(1e-3, M_PI_2);
  CHECK(std::abs(s.states().back()[0] - 1.0) < 1e-8);
}

TEST_CASE("RK4 is exact on low-degree polynomials") {
  NumericSolution s = integrate_linear_ode({CoeffFn::constant(0.0), CoeffFn::constant(0.0)},
                                           {0.0, 1.0}, Grid{0.0, 1.0, 1e-3});
  CHECK(s.states().back()[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("halving the step divides the error by roughly sixteen") {
  double ratio = max_sine_error(1e-2) / max_sine_error(5e-3);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("overall convergence order stays near four across 1e-2 to 1e-3") {
  double order = std::log(max_sine_error(1e-2) / max_sine_error(1e-3)) / std::log(10.0);
  CHECK(order >= 3.7);
  CHECK(order <= 4.3);
}

TEST_CASE("blow-up is reported with a location") {
  auto nasty = CoeffFn::from_callable([](int, double x) { return x > 0.5 ? -1e308 : 1.0; });
  CHECK_THROWS_WITH_AS(
      integrate_linear_ode({nasty, CoeffFn::constant(0.0)}, {1.0, 0.0}, Grid{0.0, 1.0, 1e-2}),
      doctest::Contains("blew up"), DomainError);
}

TEST_CASE("derivative tower is consistent with the ODE") {
  // y'' + x y = 0: compare the reconstructed third derivative with a
  // finite-difference estimate of y'' (independent of the tower formula)
  NumericSolution s = integrate_linear_ode({CoeffFn::from_expr(Expr::x()), CoeffFn::constant(0.0)},
                                           {1.0, 0.0}, Grid{0.0, 1.0, 1e-3});
  for (size_t i = 1; i + 1 < s.xs().size(); i += 100) {
    double fd = (s.derivative(i + 1, 2) - s.derivative(i - 1, 2)) / (2e-3);
    CHECK(std::abs(s.derivative(i, 3) - fd) < 1e-4);
  }
  // and the defining relation holds to rounding
  for (size_t i = 0; i < s.xs().size(); i += 50) {
    double rel = std::abs(s.derivative(i, 2) + s.xs()[i] * s.derivative(i, 0));
    CHECK(rel <= 1e-12 * std::max(1.0, std::abs(s.derivative(i, 2))));
  }
}

TEST_CASE("apply_op_numeric examples") {
  Grid grid{0.0, 1.0, 1e-2};
  SUBCASE("d applied to y = x") {
    NumericSolution s = integrate_linear_ode(
        {CoeffFn::constant(0.0), CoeffFn::constant(0.0)}, {0.0, 1.0}, grid);
    SampledFunction g = apply_op_numeric(NumOp::from_op(Op("D")), s);
    for (double v : g.value) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("x^2 d - x annihilates y = x") {
    NumericSolution s = integrate_linear_ode(
        {CoeffFn::constant(0.0), CoeffFn::constant(0.0)}, {0.0, 1.0}, grid);
    SampledFunction g = apply_op_numeric(NumOp::from_op(Op("x^2*D - x")), s);
    for (double v : g.value) CHECK(std::abs(v) < 1e-12);
  }
  SUBCASE("cos(2x) d + sin(2x) maps sin to cos") {
    NumericSolution s = integrate_linear_ode(
        {CoeffFn::constant(1.0), CoeffFn::constant(0.0)}, {0.0, 1.0}, Grid{0.0, 1.0, 1e-3});
    LinDiffOp delta = even_symmetry_from_w(P("cos(2*x)"), Expr::integer(0));
    SampledFunction g = apply_op_numeric(NumOp::from_op(delta), s);
    for (size_t i = 0; i < s.xs().size(); i += 20)
      CHECK(std::abs(g.value[i] - std::cos(s.xs()[i])) < 1e-8);
  }
}

TEST_CASE("kernel transport residuals") {
  Grid grid{0.0, 1.0, 1e-3};
  SUBCASE("certified symmetry transports solutions") {
    LinDiffOp delta = even_symmetry_from_w(P("cos(2*x)"), Expr::integer(0));
    CHECK(kernel_map_residual(Op("D^2 + 1"), delta, {0.0, 1.0}, grid) < 1e-6);
  }
  SUBCASE("identically zero transported function") {
    CHECK(kernel_map_residual(Op("D^2"), Op("x^2*D - x"), {0.0, 1.0}, grid) < 1e-12);
  }
  SUBCASE("the transcribed-variant w fails transport for H = 1") {
    // w = cos(sqrt(2) x) solves w''' + 2 w' = 0 but does not transport
    double r = 0.0;
    double s2 = std::sqrt(2.0);
    NumOp delta;
    auto w = CoeffFn::from_callable([s2](int m, double x) {
      double sc = std::pow(s2, m);
      switch (m % 4) {
        case 0: return sc * std::cos(s2 * x);
        case 1: return -sc * std::sin(s2 * x);
        case 2: return -sc * std::cos(s2 * x);
        default: return sc * std::sin(s2 * x);
      }
    });
    delta.coeffs.push_back(
        CoeffFn::from_callable([w](int m, double x) { return -0.5 * w(m + 1, x); }));
    delta.coeffs.push_back(w);
    r = kernel_map_report({CoeffFn::constant(1.0), CoeffFn::constant(0.0)}, delta, {1.0, 0.0},
                          grid)
            .max_residual;
    CHECK(r >= 1e-2);
  }
  SUBCASE("order precondition") {
    CHECK_THROWS_AS(kernel_map_residual(Op("D^2 + 1"), Op("D^2"), {0.0, 1.0}, grid), DomainError);
  }
}

TEST_CASE("oracle agrees with the symbolic certificate") {
  Grid grid{0.0, 1.0, 1e-3};
  struct Case {
    const char* l;
    const char* w;
    const char* g;
  };
  for (const Case& c : {Case{"D^2", "x^2", "0"}, Case{"D^2", "x", "0"}, Case{"D^2 + 1", "sin(2*x)", "0"},
                        Case{"D^2 + 2*D + 1", "x", "2"}, Case{"D^2 + 2*D + 1", "x^2", "2"}}) {
    LinDiffOp l = Op(c.l);
    LinDiffOp delta = even_symmetry_from_w(P(c.w), P(c.g));
    REQUIRE(symmetry_quotient(l, delta).is_symmetry());
    for (auto& init : {std::vector<double>{1, 0}, std::vector<double>{0, 1}})
      CHECK(kernel_map_residual(l, delta, init, grid) < 1e-6);
  }
}

TEST_CASE("variant comparison table") {
  Grid grid{0.0, 1.0, 1e-3};
  SUBCASE("H = 0: the variants coincide") {
    VariantReport r = compare_ltilde_variants(0.0, grid);
    CHECK(r.rows.size() == 12);  // 2 variants x 3 kernel elements x 2 inits
    for (const auto& row : r.rows) CHECK(row.max_residual < 1e-12);
  }
  SUBCASE("H = 1: only the derived variant transports") {
    VariantReport r = compare_ltilde_variants(1.0, grid);
    bool saw_paper_failure = false;
    for (const auto& row : r.rows) {
      if (row.variant == "derived") CHECK(row.max_residual < 1e-6);
      if (row.variant == "paper" && row.w != "1") {
        CHECK(row.max_residual >= 1e-2);
        saw_paper_failure = true;
      }
    }
    CHECK(saw_paper_failure);
  }
  SUBCASE("negative H is rejected") {
    CHECK_THROWS_AS(compare_ltilde_variants(-1.0, grid), DomainError);
  }
}

TEST_CASE("gauge transport oracle") {
  Grid grid{0.0, 1.0, 1e-3};
  SUBCASE("G = 1, H = 1 transports through I = 3/4") {
    CHECK(gauge_transport_residual(P("1"), P("1"), {1.0, 0.0}, grid) < 1e-6);
    CHECK(gauge_transport_residual(P("1"), P("1"), {0.0, 1.0}, grid) < 1e-6);
  }
  SUBCASE("variable G") {
    CHECK(gauge_transport_residual(P("x"), P("1 + x^2"), {1.0, 0.0}, grid) < 1e-6);
  }
  SUBCASE("non-uniform grids are rejected") {
    CHECK_THROWS_AS((gauge_transport_residual(P("1"), P("1"), {1.0, 0.0}, Grid{0.0, 1.0, 3e-4})),
                    DomainError);
  }
}

TEST_CASE("grid construction") {
  CHECK(Grid{0.0, 1.0, 1e-3}.sample_points().size() == 1001);
  CHECK(Grid{0.0, 1.0, 1e-3}.uniform());
  auto xs = Grid{0.0, M_PI_2, 1e-3}.sample_points();
  CHECK(xs.back() == doctest::Approx(M_PI_2));
  CHECK_THROWS_AS((Grid{0.0, 1.0, -1.0}.sample_points()), DomainError);
  CHECK_THROWS_AS((Grid{1.0, 0.0, 1e-3}.sample_points()), DomainError);
}
