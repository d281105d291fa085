#pragma once

#include <functional>
#include <string>
#include <vector>

#include "odesym/diffop.hpp"

namespace odesym {

/// Uniform sample grid on [x0, x1]. When the interval is not an exact
/// multiple of step the final step is shortened to land on x1.
struct Grid {
  double x0 = 0.0;
  double x1 = 1.0;
  double step = 1e-3;

  std::vector<double> sample_points() const;
  bool uniform() const;  // true when no shortened final step is needed
};

/// Smooth numeric coefficient: eval(m, x) is the m-th derivative at x.
/// Derivatives are always analytic - either symbolic derivatives of an
/// Expr or a caller-supplied closure - never finite differences.
class CoeffFn {
 public:
  CoeffFn() : CoeffFn(constant(0.0)) {}

  static CoeffFn from_expr(const Expr& e);
  static CoeffFn constant(double c);
  static CoeffFn from_callable(std::function<double(int, double)> f);

  double operator()(int m, double x) const { return f_(m, x); }

 private:
  explicit CoeffFn(std::function<double(int, double)> f) : f_(std::move(f)) {}
  std::function<double(int, double)> f_;
};

/// Operator with numeric coefficients, sum c_i d^i.
struct NumOp {
  std::vector<CoeffFn> coeffs;

  static NumOp from_op(const LinDiffOp& op);  // concrete x-only coefficients
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Sampled trajectory of y^(m) + a_(m-1) y^(m-1) + ... + a_0 y = 0 with
/// the state vector (y, y', ..., y^(m-1)) at every grid point. Higher
/// derivatives are reconstructed exactly from the ODE by differentiating
/// the relation y^(m) = -sum a_i y^(i).
class NumericSolution {
 public:
  NumericSolution(std::vector<CoeffFn> coeffs, std::vector<double> xs,
                  std::vector<std::vector<double>> states);

  int ode_order() const { return static_cast<int>(a_.size()); }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<std::vector<double>>& states() const { return states_; }

  /// y^(deriv) at sample idx, any deriv >= 0.
  double derivative(size_t idx, int deriv) const;

 private:
  std::vector<CoeffFn> a_;
  std::vector<double> xs_;
  std::vector<std::vector<double>> states_;
};

/// Classical fixed-step RK4 on the companion first-order system.
/// Throws DomainError naming the offending x when the state blows up.
NumericSolution integrate_linear_ode(std::vector<CoeffFn> coeffs, std::vector<double> init,
                                     const Grid& grid);

/// Same, with the equation read off a monic operator L (order >= 1).
NumericSolution integrate_kernel(const LinDiffOp& l, std::vector<double> init, const Grid& grid);

/// Samples of g = Delta(h) and its first two derivatives along the
/// solution, all computed via product rule against the derivative tower.
struct SampledFunction {
  std::vector<double> value, d1, d2;
};

SampledFunction apply_op_numeric(const NumOp& delta, const NumericSolution& sol);

struct ResidualReport {
  Grid grid;
  double max_residual = 0.0;
  std::vector<double> samples;  // |L(Delta h)| per grid point
};

/// Integrate h in the kernel of y^(m) + a_(m-1) y^(m-1) + ... + a_0 y = 0,
/// transport it through Delta (order <= m-1) and measure the max of
/// |(Delta h)^(m) + sum a_i (Delta h)^(i)| over the grid.
ResidualReport kernel_map_report(std::vector<CoeffFn> a, const NumOp& delta,
                                 const std::vector<double>& init, const Grid& grid);

/// Same with the equation read off a monic operator with concrete
/// coefficients.
ResidualReport kernel_map_report(const LinDiffOp& l, const NumOp& delta,
                                 const std::vector<double>& init, const Grid& grid);

double kernel_map_residual(const LinDiffOp& l, const NumOp& delta,
                           const std::vector<double>& init, const Grid& grid);
double kernel_map_residual(const LinDiffOp& l, const LinDiffOp& delta,
                           const std::vector<double>& init, const Grid& grid);

/// One row of the adjudication table for the two w-operator variants.
struct VariantRow {
  std::string variant;  // "derived" or "paper"
  std::string w;        // printable kernel element
  std::vector<double> init;
  double max_residual;
};

struct VariantReport {
  double h_value;
  Grid grid;
  std::vector<VariantRow> rows;
};

/// For constant H >= 0: build closed-form kernel bases of the derived
/// operator d^3 + 4H d + 2H' and of d^3 + 2H d + H', construct the even
/// symmetry w d - w'/2 from every w, and measure kernel transport against
/// d^2 + H for both basis initial conditions.
VariantReport compare_ltilde_variants(double h_value, const Grid& grid);

/// Gauge-transport oracle for L = d^2 + G d + H: integrate z'' + I z = 0
/// with I = H - G^2/4 - G'/2, form mu = exp(-1/2 int G) by Simpson
/// quadrature on the grid, and measure max |y'' + G y' + H y| for
/// y = mu z with derivatives taken analytically.
double gauge_transport_residual(const Expr& g, const Expr& h, const std::vector<double>& init,
                                const Grid& grid);

}  // namespace odesym
