#pragma once

#include <utility>
#include <vector>

#include "odesym/diffop.hpp"
#include "odesym/expr.hpp"

namespace odesym {

/// k-jet context for y^(k+1) = F(x, p0..pk). The total derivative along
/// solutions is D = d/dx + p1 d/dp0 + ... + pk d/dp(k-1) + F d/dpk.
struct JetContext {
  int k;
  Expr rhs;  // F

  JetContext(int k_, Expr F);
};

/// One application of the total derivative D.
Expr total_derivative(const JetContext& ctx, const Expr& e);

/// Components (f, D(f), ..., D^k(f)) of the shuffling-symmetry
/// representative S_f = f d/dp0 + D(f) d/dp1 + ...
std::vector<Expr> shuffle_field(const JetContext& ctx, const Expr& f);

/// D^(k+1)(f) - sum_i dF/dp_i D^i(f); zero exactly when S_f is a
/// shuffling symmetry of the equation.
Expr lie_equation_residual(const JetContext& ctx, const Expr& f);

/// [f, g] = sum_i ( D^i(f) dg/dp_i - D^i(g) df/dp_i ).
Expr poisson_lie_bracket(const JetContext& ctx, const Expr& f, const Expr& g);

/// f = b0(x) p0 + ... + bk(x) pk  ->  b0 + b1 d + ... + bk d^k.
/// Rejects generating functions that are not linear homogeneous in the
/// jet variables with x-only coefficients.
LinDiffOp linear_genfunc_to_op(const Expr& f);

/// Inverse transcription; requires order(delta) <= k.
Expr op_to_linear_genfunc(const LinDiffOp& delta, int k);

/// For f = a(x,p0) p1 + b(x,p0): the point vector field coefficients
/// (b, -a) of (d/dp0, d/dx).
std::pair<Expr, Expr> affine_genfunc_to_point_field(const Expr& f);

/// Context of the equation L(y) = 0 for monic L of order k+1:
/// F = -sum A_i p_i.
JetContext jet_context_for(const LinDiffOp& l);

}  // namespace odesym
