#include <doctest.h>

#include <cmath>
#include <thread>

#include "odesym/parse.hpp"
#include "support/generators.hpp"

using namespace odesym;

namespace {
Expr P(const char* s) { return parse_expression(s); }
}

TEST_CASE("parsing the grammar") {
  CHECK(equals(P("x^2 + 1"), Expr::pow(Expr::x(), 2) + Expr::integer(1)));
  CHECK(equals(P("G'*x"), Expr::func_sym("G", 1) * Expr::x()));
  CHECK(equals(P("2*x + x"), P("3*x")));
  CHECK(equals(P("p0 + 2*p1"), Expr::jet(0) + Expr::integer(2) * Expr::jet(1)));
  CHECK(equals(P("sin(cos(x))"), Expr::apply(Func::Sin, Expr::apply(Func::Cos, Expr::x()))));
  CHECK(equals(P("x/2"), Expr::rational(Rational(1, 2)) * Expr::x()));
  CHECK(equals(P("0.25"), Expr::rational(Rational(1, 4))));
  CHECK(equals(P("-x + 1"), Expr::integer(1) - Expr::x()));
  CHECK(equals(P("2^-1"), Expr::rational(Rational(1, 2))));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(P("x +"), ParseError);
  CHECK_THROWS_AS(P("2 $ 3"), ParseError);
  CHECK_THROWS_AS(P("x^(1/2)"), ParseError);  // integer exponents only
  CHECK_THROWS_AS(P("1/x"), ParseError);      // numeric divisors only
  CHECK_THROWS_AS(P("sin x"), ParseError);
  CHECK_THROWS_AS(P("p1'"), ParseError);
  CHECK_THROWS_AS(P("D + 1"), ParseError);    // D is operator-only
  try {
    P("x + $");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("normalize spec examples") {
  CHECK(to_string(P("x + x")) == "2*x");
  CHECK(to_string(P("(x+1)*(x-1)")) == "x^2 - 1");
  CHECK(is_zero(P("G*H - H*G")));
  CHECK_THROWS_AS(normalize(Expr::pow(Expr::x(), -1)), DomainError);
}

TEST_CASE("normalize is idempotent on random expressions") {
  testgen::Gen gen(2024);
  for (int i = 0; i < 200; ++i) {
    Expr e = gen.coeff_expr(3) * gen.coeff_expr(2) + gen.coeff_expr(3);
    Expr n1 = normalize(e);
    Expr n2 = normalize(n1);
    CHECK(compare_canonical(n1, n2) == 0);
  }
}

TEST_CASE("diff spec examples") {
  CHECK(to_string(diff(P("x^3"))) == "3*x^2");
  CHECK(equals(diff(P("G*x")), P("G'*x + G")));
  CHECK(to_string(diff(P("sin(x)"))) == "cos(x)");
  CHECK(equals(diff(P("exp(x^2)")), P("2*x*exp(x^2)")));
  CHECK_THROWS_AS(diff(P("p1 + x")), DomainError);
}

TEST_CASE("diff is linear and Leibniz on random expressions") {
  testgen::Gen gen(5150);
  for (int i = 0; i < 200; ++i) {
    Expr a = gen.coeff_expr(3), b = gen.coeff_expr(3);
    CHECK(equals(diff(a + b), diff(a) + diff(b)));
    CHECK(equals(diff(a * b), diff(a) * b + a * diff(b)));
  }
}

TEST_CASE("substitute spec examples") {
  CHECK(equals(substitute(P("G'"), {{"G", P("x^2")}}), P("2*x")));
  CHECK(equals(substitute(P("G*H"), {{"G", P("1")}}), P("H")));
  CHECK(equals(substitute(P("G''"), {{"G", P("sin(x)")}}), P("-sin(x)")));
  CHECK_THROWS_AS(substitute(P("G"), {{"G", P("G + 1")}}), DomainError);
  CHECK_THROWS_AS(substitute(P("G"), {{"G", P("H")}, {"H", P("x")}}), DomainError);
}

TEST_CASE("substitute commutes with diff") {
  testgen::Gen gen(31337);
  for (int i = 0; i < 100; ++i) {
    Expr e = gen.coeff_expr(3);
    std::map<std::string, Expr> bind{{"G", gen.poly_x(3)}, {"H", gen.poly_x(3)}};
    CHECK(equals(substitute(diff(e), bind), diff(substitute(e, bind))));
  }
}

TEST_CASE("eval spec examples") {
  EvalPoint at2;
  at2.x = 2.0;
  CHECK(eval_numeric(P("x^2 + 1"), at2) == doctest::Approx(5.0));
  EvalPoint at0;
  at0.funcs["G"] = [](int m, double x) {
    switch (m % 4) {
      case 0: return std::cos(x);
      case 1: return -std::sin(x);
      case 2: return -std::cos(x);
      default: return std::sin(x);
    }
  };
  CHECK(eval_numeric(P("G"), at0) == doctest::Approx(1.0));
  EvalPoint athalfpi;
  athalfpi.x = 1.5707963267948966;
  CHECK(std::abs(eval_numeric(P("sin(x)"), athalfpi) - 1.0) < 1e-15);
  CHECK_THROWS_AS(eval_numeric(P("Q"), at2), DomainError);
  CHECK_THROWS_AS(eval_numeric(P("p0"), at2), DomainError);
  CHECK_THROWS_AS(eval_numeric(P("exp(x)"), EvalPoint{1e10, {}, {}}), DomainError);
}

TEST_CASE("substitute and eval agree on polynomial bindings") {
  testgen::Gen gen(424242);
  for (int i = 0; i < 100; ++i) {
    Expr e = gen.coeff_expr(3);
    Expr gbind = gen.poly_x(3), hbind = gen.poly_x(3);
    double x = gen.uniform(-20, 20) / 10.0;
    EvalPoint direct;
    direct.x = x;
    auto closure = [x](Expr body) {
      return [body](int m, double xv) {
        Expr d = body;
        for (int j = 0; j < m; ++j) d = diff(d);
        EvalPoint p;
        p.x = xv;
        return eval_numeric(d, p);
      };
    };
    direct.funcs["G"] = closure(gbind);
    direct.funcs["H"] = closure(hbind);
    EvalPoint plain;
    plain.x = x;
    double a = eval_numeric(substitute(e, {{"G", gbind}, {"H", hbind}}), plain);
    double b = eval_numeric(e, direct);
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("equals spec examples") {
  CHECK(equals(P("(x+1)^2"), P("x^2 + 2*x + 1")));
  CHECK(equals(P("G'*H"), P("H*G'")));
  CHECK_FALSE(equals(P("2*H"), P("4*H")));
}

TEST_CASE("printer output re-parses to an equal expression") {
  testgen::Gen gen(777);
  for (int i = 0; i < 200; ++i) {
    Expr e = gen.coeff_expr(3) * gen.coeff_expr(2);
    if (gen.uniform(0, 1)) e = e + Expr::apply(Func::Sin, gen.poly_x(2));
    CHECK(equals(P(to_string(e).c_str()), e));
  }
}

namespace {

// independent reference evaluator over the raw tree, no normalization;
// the oracle for semantic preservation of normalize()
double raw_eval(const Expr& e, double x) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, RationalNode>) return n.value.to_double();
        if constexpr (std::is_same_v<T, VarNode>) return x;  // only x occurs in these trees
        if constexpr (std::is_same_v<T, FuncSymNode>)
          return std::cos((n.order + 1) * x);  // arbitrary fixed interpretation
        if constexpr (std::is_same_v<T, ApplyNode>) {
          double a = raw_eval(n.arg, x);
          switch (n.fn) {
            case Func::Sin: return std::sin(a);
            case Func::Cos: return std::cos(a);
            case Func::Exp: return std::exp(a);
          }
        }
        if constexpr (std::is_same_v<T, SumNode>) {
          double s = 0;
          for (const auto& t : n.terms) s += raw_eval(t, x);
          return s;
        }
        if constexpr (std::is_same_v<T, ProductNode>) {
          double s = 1;
          for (const auto& f : n.factors) s *= raw_eval(f, x);
          return s;
        }
        if constexpr (std::is_same_v<T, PowNode>)
          return std::pow(raw_eval(n.base, x), static_cast<double>(n.exponent));
        return 0.0;
      },
      e.node().v);
}

Expr random_tree(testgen::Gen& gen, int depth) {
  switch (gen.uniform(0, depth > 0 ? 6 : 2)) {
    case 0: return Expr::rational(gen.small_rational());
    case 1: return Expr::x();
    case 2: return Expr::func_sym("G", gen.uniform(0, 2));
    case 3: {
      std::vector<Expr> ts;
      for (int i = gen.uniform(1, 3); i > 0; --i) ts.push_back(random_tree(gen, depth - 1));
      return Expr::sum(std::move(ts));
    }
    case 4: {
      std::vector<Expr> fs;
      for (int i = gen.uniform(1, 3); i > 0; --i) fs.push_back(random_tree(gen, depth - 1));
      return Expr::product(std::move(fs));
    }
    case 5: return Expr::pow(random_tree(gen, depth - 1), gen.uniform(0, 3));
    default:
      return Expr::apply(static_cast<Func>(gen.uniform(0, 2)), random_tree(gen, depth - 1));
  }
}

}  // namespace

TEST_CASE("normalize preserves values on random trees") {
  testgen::Gen gen(987654);
  EvalPoint point;
  point.funcs["G"] = [](int m, double x) { return std::cos((m + 1) * x); };
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Expr e = random_tree(gen, 4);
    double x = gen.uniform(-15, 15) / 10.0;
    point.x = x;
    double reference = raw_eval(e, x);
    if (!std::isfinite(reference) || std::abs(reference) > 1e9) continue;  // exp blowups
    double canonical = eval_numeric(normalize(e), point);
    CHECK(std::abs(canonical - reference) <= 1e-9 * std::max(1.0, std::abs(reference)));
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("parser survives garbage input") {
  testgen::Gen gen(13131);
  const std::string alphabet = "xpGH'()+-*/^0123456789 sincoexp.";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    for (int j = gen.uniform(1, 24); j > 0; --j)
      s += alphabet[gen.uniform(0, static_cast<int>(alphabet.size()) - 1)];
    try {
      Expr e = parse_expression(s);
      (void)normalize(e);  // whatever parses must normalize
    } catch (const ParseError&) {
    } catch (const DomainError&) {
    }
  }
}

TEST_CASE("expression values are safe to use across threads") {
  Expr shared = parse_expression("(x + G)^3 - x*G'");
  std::vector<std::thread> workers;
  std::vector<std::string> results(4);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      std::string out;
      for (int i = 0; i < 50; ++i) out = to_string(diff(shared * shared));
      results[t] = out;
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 1; t < 4; ++t) CHECK(results[t] == results[0]);
}

TEST_CASE("identical apply arguments collect into powers") {
  Expr s = Expr::apply(Func::Sin, P("x + 1"));
  CHECK(to_string(s * s) == "sin(x + 1)^2");
  // different arguments stay distinct atoms
  CHECK_FALSE(equals(Expr::apply(Func::Sin, P("x")), Expr::apply(Func::Sin, P("2*x"))));
}
