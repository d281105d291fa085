#include "odesym/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>

#include "odesym/symmetry.hpp"

namespace odesym {

namespace {

double binom(int n, int k) {
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

std::vector<double> Grid::sample_points() const {
  if (step <= 0) throw DomainError("grid step must be positive");
  if (x1 <= x0) throw DomainError("grid requires x1 > x0");
  if ((x1 - x0) / step > 1e7) throw DomainError("grid has more than 1e7 samples");
  std::vector<double> xs;
  size_t n = static_cast<size_t>(std::floor((x1 - x0) / step + 1e-9));
  xs.reserve(n + 2);
  for (size_t i = 0; i <= n; ++i) xs.push_back(x0 + static_cast<double>(i) * step);
  if (x1 - xs.back() > 1e-9 * step) xs.push_back(x1);
  return xs;
}

bool Grid::uniform() const {
  double n = std::round((x1 - x0) / step);
  return std::abs(n * step - (x1 - x0)) <= 1e-9 * step;
}

CoeffFn CoeffFn::from_expr(const Expr& e) {
  if (mentions_jet(e) || mentions_d_symbol(e))
    throw DomainError("numeric coefficients must be expressions in x");
  // symbolic derivative tower, grown lazily; the lock keeps shared
  // copies safe across concurrent sweeps
  struct Tower {
    std::mutex mu;
    std::vector<Expr> d;
  };
  auto tower = std::make_shared<Tower>();
  tower->d.push_back(normalize(e));
  return CoeffFn([tower](int m, double x) {
    Expr dm;
    {
      std::lock_guard<std::mutex> lock(tower->mu);
      while (static_cast<int>(tower->d.size()) <= m) tower->d.push_back(diff(tower->d.back()));
      dm = tower->d[m];
    }
    EvalPoint p;
    p.x = x;
    return eval_numeric(dm, p);
  });
}

CoeffFn CoeffFn::constant(double c) {
  return CoeffFn([c](int m, double) { return m == 0 ? c : 0.0; });
}

CoeffFn CoeffFn::from_callable(std::function<double(int, double)> f) {
  return CoeffFn(std::move(f));
}

NumOp NumOp::from_op(const LinDiffOp& op) {
  NumOp n;
  n.coeffs.reserve(op.coeffs().size());
  for (const auto& c : op.coeffs()) n.coeffs.push_back(CoeffFn::from_expr(c));
  return n;
}

NumericSolution::NumericSolution(std::vector<CoeffFn> coeffs, std::vector<double> xs,
                                 std::vector<std::vector<double>> states)
    : a_(std::move(coeffs)), xs_(std::move(xs)), states_(std::move(states)) {}

double NumericSolution::derivative(size_t idx, int deriv) const {
  const int m = ode_order();
  if (deriv < m) return states_[idx][deriv];
  double x = xs_[idx];
  std::vector<double> tower = states_[idx];
  tower.reserve(deriv + 1);
  // y^(m+j) = -sum_i sum_r C(j,r) a_i^(r) y^(i+j-r), all lower orders known
  for (int q = m; q <= deriv; ++q) {
    int j = q - m;
    double v = 0;
    for (int i = 0; i < m; ++i)
      for (int r = 0; r <= j; ++r)
        v -= binom(j, r) * a_[i](r, x) * tower[i + j - r];
    tower.push_back(v);
  }
  return tower[deriv];
}

NumericSolution integrate_linear_ode(std::vector<CoeffFn> coeffs, std::vector<double> init,
                                     const Grid& grid) {
  const int m = static_cast<int>(coeffs.size());
  if (m < 1) throw DomainError("ODE order must be at least 1");
  if (static_cast<int>(init.size()) != m)
    throw DomainError("initial state length must equal the ODE order");

  auto rhs = [&](double x, const std::vector<double>& y, std::vector<double>& dy) {
    for (int i = 0; i < m - 1; ++i) dy[i] = y[i + 1];
    double top = 0;
    for (int i = 0; i < m; ++i) top -= coeffs[i](0, x) * y[i];
    dy[m - 1] = top;
  };

  std::vector<double> xs = grid.sample_points();
  std::vector<std::vector<double>> states;
  states.reserve(xs.size());
  std::vector<double> y = init;
  states.push_back(y);
  std::vector<double> k1(m), k2(m), k3(m), k4(m), tmp(m);
  for (size_t s = 1; s < xs.size(); ++s) {
    double x = xs[s - 1];
    double dt = xs[s] - xs[s - 1];
    rhs(x, y, k1);
    for (int i = 0; i < m; ++i) tmp[i] = y[i] + dt / 2 * k1[i];
    rhs(x + dt / 2, tmp, k2);
    for (int i = 0; i < m; ++i) tmp[i] = y[i] + dt / 2 * k2[i];
    rhs(x + dt / 2, tmp, k3);
    for (int i = 0; i < m; ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(x + dt, tmp, k4);
    for (int i = 0; i < m; ++i) y[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    for (double v : y)
      if (!std::isfinite(v))
        throw DomainError("integration blew up near x = " + std::to_string(xs[s]));
    states.push_back(y);
  }
  return NumericSolution(std::move(coeffs), std::move(xs), std::move(states));
}

NumericSolution integrate_kernel(const LinDiffOp& l, std::vector<double> init, const Grid& grid) {
  if (!l.is_monic() || l.order() < 1)
    throw DomainError("kernel integration requires a monic operator of order >= 1");
  std::vector<CoeffFn> coeffs;
  for (int i = 0; i < l.order(); ++i) coeffs.push_back(CoeffFn::from_expr(l.coeff(i)));
  return integrate_linear_ode(std::move(coeffs), std::move(init), grid);
}

SampledFunction apply_op_numeric(const NumOp& delta, const NumericSolution& sol) {
  SampledFunction out;
  const size_t n = sol.xs().size();
  out.value.resize(n);
  out.d1.resize(n);
  out.d2.resize(n);
  for (size_t s = 0; s < n; ++s) {
    double x = sol.xs()[s];
    double g0 = 0, g1 = 0, g2 = 0;
    for (int i = 0; i <= delta.order(); ++i) {
      const CoeffFn& b = delta.coeffs[i];
      double yi = sol.derivative(s, i);
      double yi1 = sol.derivative(s, i + 1);
      double yi2 = sol.derivative(s, i + 2);
      g0 += b(0, x) * yi;
      g1 += b(1, x) * yi + b(0, x) * yi1;
      g2 += b(2, x) * yi + 2 * b(1, x) * yi1 + b(0, x) * yi2;
    }
    out.value[s] = g0;
    out.d1[s] = g1;
    out.d2[s] = g2;
  }
  return out;
}

ResidualReport kernel_map_report(std::vector<CoeffFn> a, const NumOp& delta,
                                 const std::vector<double>& init, const Grid& grid) {
  const int m = static_cast<int>(a.size());
  if (m < 1) throw DomainError("kernel transport requires an equation of order >= 1");
  if (delta.order() > m - 1)
    throw DomainError("transport operator order must be below the equation order");
  NumericSolution sol = integrate_linear_ode(a, init, grid);

  ResidualReport report;
  report.grid = grid;
  report.samples.reserve(sol.xs().size());
  for (size_t s = 0; s < sol.xs().size(); ++s) {
    double x = sol.xs()[s];
    // g^(j) = sum_i sum_r C(j,r) b_i^(r) y^(i+j-r)
    std::vector<double> gderiv(m + 1, 0.0);
    for (int j = 0; j <= m; ++j)
      for (int i = 0; i <= delta.order(); ++i)
        for (int r = 0; r <= j; ++r)
          gderiv[j] += binom(j, r) * delta.coeffs[i](r, x) * sol.derivative(s, i + j - r);
    double res = gderiv[m];
    for (int i = 0; i < m; ++i) res += a[i](0, x) * gderiv[i];
    res = std::abs(res);
    report.samples.push_back(res);
    report.max_residual = std::max(report.max_residual, res);
  }
  return report;
}

ResidualReport kernel_map_report(const LinDiffOp& l, const NumOp& delta,
                                 const std::vector<double>& init, const Grid& grid) {
  if (!l.is_monic() || l.order() < 1)
    throw DomainError("kernel transport requires a monic operator of order >= 1");
  std::vector<CoeffFn> a;
  for (int i = 0; i < l.order(); ++i) a.push_back(CoeffFn::from_expr(l.coeff(i)));
  return kernel_map_report(std::move(a), delta, init, grid);
}

double kernel_map_residual(const LinDiffOp& l, const NumOp& delta,
                           const std::vector<double>& init, const Grid& grid) {
  return kernel_map_report(l, delta, init, grid).max_residual;
}

double kernel_map_residual(const LinDiffOp& l, const LinDiffOp& delta,
                           const std::vector<double>& init, const Grid& grid) {
  return kernel_map_residual(l, NumOp::from_op(delta), init, grid);
}

// ---------------------------------------------------------------------------

namespace {

CoeffFn sin_freq(double w) {
  return CoeffFn::from_callable([w](int m, double x) {
    double scale = std::pow(w, m);
    switch (m % 4) {
      case 0: return scale * std::sin(w * x);
      case 1: return scale * std::cos(w * x);
      case 2: return -scale * std::sin(w * x);
      default: return -scale * std::cos(w * x);
    }
  });
}

CoeffFn cos_freq(double w) {
  return CoeffFn::from_callable([w](int m, double x) {
    double scale = std::pow(w, m);
    switch (m % 4) {
      case 0: return scale * std::cos(w * x);
      case 1: return -scale * std::sin(w * x);
      case 2: return -scale * std::cos(w * x);
      default: return scale * std::sin(w * x);
    }
  });
}

struct KernelElement {
  std::string label;
  CoeffFn w;
};

std::string freq_label(const char* fn, double w) {
  char buf[64];
  if (std::abs(w - std::round(w)) < 1e-12)
    std::snprintf(buf, sizeof(buf), "%s(%g*x)", fn, w);
  else
    std::snprintf(buf, sizeof(buf), "%s(%.12g*x)", fn, w);
  return buf;
}

// closed-form kernel of d^3 + c d for constant c >= 0
std::vector<KernelElement> third_order_kernel(double c) {
  if (c == 0.0) {
    return {
        {"1", CoeffFn::constant(1.0)},
        {"x", CoeffFn::from_expr(Expr::x())},
        {"x^2", CoeffFn::from_expr(Expr::pow(Expr::x(), 2))},
    };
  }
  double w = std::sqrt(c);
  return {
      {"1", CoeffFn::constant(1.0)},
      {freq_label("sin", w), sin_freq(w)},
      {freq_label("cos", w), cos_freq(w)},
  };
}

// the even symmetry w d - w'/2 with numeric w (G = 0 gauge)
NumOp even_symmetry_numeric(const CoeffFn& w) {
  NumOp op;
  op.coeffs.push_back(CoeffFn::from_callable(
      [w](int m, double x) { return -0.5 * w(m + 1, x); }));
  op.coeffs.push_back(w);
  return op;
}

}  // namespace

VariantReport compare_ltilde_variants(double h_value, const Grid& grid) {
  if (h_value < 0)
    throw DomainError("closed-form kernels require constant H >= 0; negative H is not supported");
  VariantReport report;
  report.h_value = h_value;
  report.grid = grid;

  // L = d^2 + H
  std::vector<CoeffFn> l_coeffs = {CoeffFn::constant(h_value), CoeffFn::constant(0.0)};

  struct Variant {
    const char* name;
    double c;  // d^3 + c d
  };
  const Variant variants[] = {{"derived", 4 * h_value}, {"paper", 2 * h_value}};
  const std::vector<std::vector<double>> inits = {{1.0, 0.0}, {0.0, 1.0}};
  for (const auto& variant : variants) {
    for (auto& elem : third_order_kernel(variant.c)) {
      NumOp delta = even_symmetry_numeric(elem.w);
      for (const auto& init : inits) {
        VariantRow row;
        row.variant = variant.name;
        row.w = elem.label;
        row.init = init;
        row.max_residual = kernel_map_report(l_coeffs, delta, init, grid).max_residual;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

double gauge_transport_residual(const Expr& g, const Expr& h, const std::vector<double>& init,
                                const Grid& grid) {
  if (!grid.uniform())
    throw DomainError("gauge transport requires the interval to be a multiple of the step");
  CoeffFn gfn = CoeffFn::from_expr(g);
  CoeffFn hfn = CoeffFn::from_expr(h);
  CoeffFn ifn = CoeffFn::from_expr(normal_form_potential(g, h));

  // z'' + I z = 0
  NumericSolution z = integrate_linear_ode({ifn, CoeffFn::constant(0.0)}, init, grid);

  // mu = exp(-1/2 int G), cumulative Simpson on the grid (half-panel
  // corrections at odd indices keep the same order)
  const auto& xs = z.xs();
  const size_t n = xs.size();
  const double step = grid.step;
  std::vector<double> gv(n);
  for (size_t i = 0; i < n; ++i) gv[i] = gfn(0, xs[i]);
  std::vector<double> integral(n, 0.0);
  for (size_t i = 1; i < n; ++i) {
    if (i % 2 == 0)
      integral[i] = integral[i - 2] + step / 3.0 * (gv[i - 2] + 4 * gv[i - 1] + gv[i]);
    else if (i + 1 < n)
      integral[i] = integral[i - 1] + step / 12.0 * (5 * gv[i - 1] + 8 * gv[i] - gv[i + 1]);
    else if (i >= 2)
      integral[i] = integral[i - 1] + step / 12.0 * (-gv[i - 2] + 8 * gv[i - 1] + 5 * gv[i]);
    else
      integral[i] = integral[i - 1] + step / 2.0 * (gv[i - 1] + gv[i]);
  }

  double max_res = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double x = xs[i];
    double mu = std::exp(-0.5 * integral[i]);
    double gx = gv[i], gpx = gfn(1, x), hx = hfn(0, x), ix = ifn(0, x);
    double zv = z.derivative(i, 0), zp = z.derivative(i, 1);
    double zpp = -ix * zv;
    double mup = -0.5 * gx * mu;
    double mupp = (0.25 * gx * gx - 0.5 * gpx) * mu;
    double y = mu * zv;
    double yp = mup * zv + mu * zp;
    double ypp = mupp * zv + 2 * mup * zp + mu * zpp;
    max_res = std::max(max_res, std::abs(ypp + gx * yp + hx * y));
  }
  return max_res;
}

}  // namespace odesym
