#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "odesym/expr.hpp"

namespace odesym {

/// Univariate linear differential operator sum a_i * d^i with Expr
/// coefficients. Coefficients are stored normalized with trailing zeros
/// trimmed; composition is noncommutative via the Leibniz rule
/// d o a = a d + a'.
class LinDiffOp {
 public:
  /// Order of the zero operator (all order arithmetic treats it explicitly).
  static constexpr int kZeroOrder = -1;

  LinDiffOp() = default;  // zero operator
  static LinDiffOp zero() { return LinDiffOp(); }
  static LinDiffOp identity();         // the operator 1
  static LinDiffOp d(int power = 1);   // d^power
  static LinDiffOp from_coeffs(std::vector<Expr> coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of d^i (zero beyond the order).
  Expr coeff(int i) const;
  const std::vector<Expr>& coeffs() const { return coeffs_; }

  bool is_monic() const;  // leading coefficient exactly 1

 private:
  std::vector<Expr> coeffs_;  // index = derivative order, normalized, trimmed
};

LinDiffOp add(const LinDiffOp& a, const LinDiffOp& b);
LinDiffOp sub(const LinDiffOp& a, const LinDiffOp& b);
LinDiffOp scale(const Expr& e, const LinDiffOp& a);
LinDiffOp negate(const LinDiffOp& a);

/// Operator composition A o B.
LinDiffOp compose(const LinDiffOp& a, const LinDiffOp& b);

/// [A, B] = A o B - B o A.
LinDiffOp commutator(const LinDiffOp& a, const LinDiffOp& b);

/// Formal adjoint: sum (-1)^i d^i o a_i.
LinDiffOp adjoint(const LinDiffOp& a);

bool is_self_adjoint(const LinDiffOp& a);
bool is_skew_adjoint(const LinDiffOp& a);

/// Apply to an expression in x: sum a_i * diff^i(h).
Expr apply(const LinDiffOp& a, const Expr& h);

bool op_equal(const LinDiffOp& a, const LinDiffOp& b);

struct DivisionResult {
  LinDiffOp quotient;
  LinDiffOp remainder;
};

/// Division with remainder by a monic operator of order >= 1:
/// A = quotient o L + remainder with order(remainder) < order(L).
/// Each step cancels the top term of the running remainder, so no
/// coefficient inversion is ever needed.
DivisionResult divide(const LinDiffOp& a, const LinDiffOp& l);

/// Operator grammar: expressions linear in nonnegative powers of the
/// reserved symbol D, coefficients multiplying D from the left.
LinDiffOp parse_op(std::string_view text);

/// Deterministic printing, highest order first, e.g. "D^2 + G*D + H".
/// Output re-parses to an equal operator.
std::string to_string(const LinDiffOp& a);

/// JSON form {"coeffs": ["a0", "a1", ...]}.
std::string to_json(const LinDiffOp& a);

}  // namespace odesym
