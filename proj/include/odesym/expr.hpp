#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "odesym/rational.hpp"

namespace odesym {

/// Syntax error with the byte offset into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

/// Violated precondition or unsupported input (non-monic divisor,
/// nonlinear generating function, unbound atom, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Func { Sin, Cos, Exp };

std::string func_name(Func f);

struct ExprNode;

/// Immutable symbolic expression: exact rationals, the variable x, jet
/// variables p0..pk, opaque function symbols with a formal derivative
/// order (G, G', G'', ...), and sin/cos/exp applications. Expressions
/// form a polynomial ring over these atoms; normalize() brings any tree
/// to the unique sum-of-monomials canonical form.
///
/// Value semantics over a shared immutable node; cheap to copy, safe to
/// share across threads.
class Expr {
 public:
  Expr();  // zero

  static Expr rational(Rational r);
  static Expr integer(long long v);
  static Expr x();
  static Expr jet(int index);                          // p_index, index >= 0
  static Expr d_symbol();                              // operator-grammar 'D'; not valid in plain expressions
  static Expr func_sym(std::string name, int order = 0);
  static Expr apply(Func f, Expr arg);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr pow(Expr base, long long exponent);

  const ExprNode& node() const { return *node_; }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  Expr operator-() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  static Expr make(ExprNode&& n);
  std::shared_ptr<const ExprNode> node_;
};

struct RationalNode { Rational value; };
struct VarNode { int index; };  // kIndexX, kIndexD, or jet index >= 0
struct FuncSymNode {
  std::string name;
  int order;  // formal derivative order, >= 0
};
struct ApplyNode { Func fn; Expr arg; };
struct SumNode { std::vector<Expr> terms; };
struct ProductNode { std::vector<Expr> factors; };
struct PowNode {
  Expr base;
  long long exponent;
};

inline constexpr int kIndexX = -1;
inline constexpr int kIndexD = -2;

struct ExprNode {
  std::variant<RationalNode, VarNode, FuncSymNode, ApplyNode, SumNode, ProductNode, PowNode> v;
};

/// Canonical form: sum of monomials, each a rational coefficient times a
/// sorted product of atoms raised to positive powers. Idempotent.
Expr normalize(const Expr& e);

/// Semantic equality as polynomials over the atom set.
bool equals(const Expr& a, const Expr& b);

bool is_zero(const Expr& e);  // equals 0 after normalization

/// Total deterministic order on canonical trees (also usable on any pair
/// of expressions by normalizing first). Returns <0, 0, >0.
int compare_canonical(const Expr& a, const Expr& b);

/// Formal d/dx: x' = 1, FuncSym(G,m)' = FuncSym(G,m+1), chain rule on
/// sin/cos/exp. Rejects expressions mentioning jet variables.
Expr diff(const Expr& e);

/// d/dx with jet variables held constant (no rejection). The total
/// derivative in the jet module is built from this.
Expr partial_x(const Expr& e);

/// Polynomial partial derivative with respect to p_index.
Expr partial_jet(const Expr& e, int index);

/// Replace FuncSym(G, m) by the m-th formal derivative of bindings["G"].
/// Bound names must not appear inside any binding value.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

/// General hook-based rewrite of function-symbol atoms: the hook sees
/// (name, order) and returns a replacement or nullopt to keep the atom.
Expr replace_func_syms(const Expr& e,
                       const std::function<std::optional<Expr>(const std::string&, int)>& hook);

struct EvalPoint {
  double x = 0.0;
  std::map<int, double> jet;  // values for p_i
  /// name -> closure giving the m-th derivative value at x
  std::map<std::string, std::function<double(int, double)>> funcs;
};

double eval_numeric(const Expr& e, const EvalPoint& point);

/// Deterministic canonical-form printing; output re-parses to an equal
/// expression.
std::string to_string(const Expr& e);

// --- structure queries -----------------------------------------------------

int max_jet_index(const Expr& e);  // -1 when no jet variable occurs
bool mentions_jet(const Expr& e);
bool mentions_d_symbol(const Expr& e);
std::set<std::string> func_sym_names(const Expr& e);

/// One monomial of the canonical form.
struct CanonicalTerm {
  Rational coeff;
  std::vector<std::pair<Expr, int>> atoms;  // (atom, exponent > 0), sorted
};

std::vector<CanonicalTerm> canonical_terms(const Expr& e);

/// Rebuild the expression of a single canonical monomial.
Expr expr_from_term(const CanonicalTerm& t);

bool is_rational_const(const Expr& e, Rational* value = nullptr);
bool is_var_x(const Expr& e);
bool is_d_atom(const Expr& e);
std::optional<int> jet_index_of(const Expr& e);
std::optional<std::pair<std::string, int>> func_sym_parts(const Expr& e);

}  // namespace odesym
