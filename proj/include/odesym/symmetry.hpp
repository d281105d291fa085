#pragma once

#include <optional>
#include <string>
#include <vector>

#include "odesym/diffop.hpp"

namespace odesym {

/// Outcome of the operator-division symmetry test: Delta is a linear
/// symmetry of L(h) = 0 exactly when L o Delta is divisible by L from the
/// right; the quotient is the certificate, the remainder the obstruction.
struct SymmetryTest {
  std::optional<LinDiffOp> quotient;  // nabla with L o Delta = nabla o L
  LinDiffOp remainder;

  bool is_symmetry() const { return quotient.has_value(); }
};

/// Divide L o Delta by monic L (order >= 1).
SymmetryTest symmetry_quotient(const LinDiffOp& l, const LinDiffOp& delta);

/// Remainder of [Delta_f, Delta_g] under division by L; both inputs must
/// be symmetries of L, and the result is again one (re-verified).
LinDiffOp symmetry_bracket(const LinDiffOp& l, const LinDiffOp& delta_f, const LinDiffOp& delta_g);

struct GradedComponent {
  LinDiffOp op;
  int parity;          // 0: L o Delta = -Delta^T o L, 1: L o Delta = Delta^T o L
  LinDiffOp quotient;  // certified cofactor
};

/// Z2-grading of a symmetry of a self- or skew-adjoint L. Pure inputs
/// yield one component; mixed sums are split by linearity through the
/// involution Delta -> -(nabla_Delta)^T. The zero operator yields none.
std::vector<GradedComponent> grade(const LinDiffOp& l, const LinDiffOp& delta);

/// Even-parity membership conditions for Delta = A0 + A1 d in
/// L = d^2 + G d + H, derived from first principles by expanding
/// L o Delta + Delta^T o L and matching coefficients of d^k.
struct EvenConditionReport {
  std::string a0_name, a1_name, w_name;
  Expr a0_rhs;                    // the forced relation A0 = a0_rhs (in A1 atoms)
  std::vector<Expr> constraints;  // surviving conditions on w (= A1), each must vanish
};

EvenConditionReport derive_even_conditions(const Expr& g, const Expr& h);

/// Odd-parity conditions from L o Delta - Delta^T o L; reduces to
/// A1 = 0 and A0' = 0 (odd symmetries are the constants).
struct OddConditionReport {
  std::string a0_name, a1_name;
  Expr a1_constraint;
  Expr a0_constraint;
};

OddConditionReport derive_odd_conditions(const Expr& g, const Expr& h);

/// The third-order w-operator in its originally published form:
/// d^3 + (2H - G^2 - 2G') d + (H' - G G' - G''). Kept verbatim so it can
/// be compared against the re-derived variant.
LinDiffOp ltilde_paper(const Expr& g, const Expr& h);

/// The constraint operator produced by derive_even_conditions at G = 0:
/// d^3 + 4H d + 2H'.
LinDiffOp ltilde_schrodinger(const Expr& h);

/// Potential I = H - G^2/4 - G'/2 of the gauge-equivalent operator
/// d^2 + I under y = exp(-1/2 int G) z.
Expr normal_form_potential(const Expr& g, const Expr& h);

/// Even symmetry built from a kernel element w of the constraint
/// operator: w d + (G w / 2 - w' / 2); at G = 0 this is -w'/2 + w d.
LinDiffOp even_symmetry_from_w(const Expr& w, const Expr& g);

/// Structure constants c[i][j][m] with
/// symmetry_bracket(l, basis[i], basis[j]) = sum_m c[i][j][m] basis[m],
/// found by exact coefficient matching; the expansion coefficients must
/// be constants.
std::vector<std::vector<std::vector<Rational>>> structure_constants(
    const LinDiffOp& l, const std::vector<LinDiffOp>& basis);

/// Linear homogeneous constraint in the formal derivatives of `name`,
/// e.g. w''' + 4*H*w' + 2*H'*w, as the operator whose kernel it defines.
LinDiffOp constraint_to_operator(const Expr& constraint, const std::string& name);

}  // namespace odesym
