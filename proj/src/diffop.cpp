#include "odesym/diffop.hpp"

#include "odesym/parse.hpp"

namespace odesym {

LinDiffOp LinDiffOp::identity() { return from_coeffs({Expr::integer(1)}); }

LinDiffOp LinDiffOp::d(int power) {
  if (power < 0) throw DomainError("negative derivative power");
  std::vector<Expr> c(power + 1, Expr::integer(0));
  c[power] = Expr::integer(1);
  return from_coeffs(std::move(c));
}

LinDiffOp LinDiffOp::from_coeffs(std::vector<Expr> coeffs) {
  LinDiffOp op;
  for (auto& c : coeffs) {
    if (mentions_d_symbol(c)) throw DomainError("operator coefficients cannot mention D");
    if (mentions_jet(c)) throw DomainError("operator coefficients are functions of x only");
    c = normalize(c);
  }
  while (!coeffs.empty() && odesym::is_zero(coeffs.back())) coeffs.pop_back();
  op.coeffs_ = std::move(coeffs);
  return op;
}

Expr LinDiffOp::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Expr::integer(0);
  return coeffs_[i];
}

bool LinDiffOp::is_monic() const {
  return !is_zero() && equals(coeffs_.back(), Expr::integer(1));
}

LinDiffOp add(const LinDiffOp& a, const LinDiffOp& b) {
  size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<Expr> c;
  c.reserve(n);
  for (size_t i = 0; i < n; ++i) c.push_back(a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i)));
  return LinDiffOp::from_coeffs(std::move(c));
}

LinDiffOp sub(const LinDiffOp& a, const LinDiffOp& b) { return add(a, negate(b)); }

LinDiffOp scale(const Expr& e, const LinDiffOp& a) {
  std::vector<Expr> c;
  c.reserve(a.coeffs().size());
  for (const auto& ai : a.coeffs()) c.push_back(e * ai);
  return LinDiffOp::from_coeffs(std::move(c));
}

LinDiffOp negate(const LinDiffOp& a) { return scale(Expr::integer(-1), a); }

namespace {

Rational binomial(int n, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
  return r;
}

}  // namespace

LinDiffOp compose(const LinDiffOp& a, const LinDiffOp& b) {
  if (a.is_zero() || b.is_zero()) return LinDiffOp::zero();
  // derivative towers of b's coefficients, shared across all of a's terms
  std::vector<std::vector<Expr>> btower(b.order() + 1);
  for (int j = 0; j <= b.order(); ++j) btower[j].push_back(b.coeff(j));
  std::vector<Expr> out(a.order() + b.order() + 1, Expr::integer(0));
  for (int i = 0; i <= a.order(); ++i) {
    const Expr& ai = a.coeff(i);
    if (is_zero(ai)) continue;
    for (int j = 0; j <= b.order(); ++j) {
      if (is_zero(b.coeff(j))) continue;
      // d^i o (b_j d^j) = sum_r C(i,r) b_j^(r) d^(i+j-r)
      auto& tower = btower[j];
      for (int r = 0; r <= i; ++r) {
        while (static_cast<int>(tower.size()) <= r) tower.push_back(diff(tower.back()));
        out[i + j - r] = out[i + j - r] + ai * Expr::rational(binomial(i, r)) * tower[r];
      }
    }
  }
  return LinDiffOp::from_coeffs(std::move(out));
}

LinDiffOp commutator(const LinDiffOp& a, const LinDiffOp& b) {
  return sub(compose(a, b), compose(b, a));
}

LinDiffOp adjoint(const LinDiffOp& a) {
  LinDiffOp r;
  for (int i = 0; i <= a.order(); ++i) {
    if (is_zero(a.coeff(i))) continue;
    LinDiffOp term = compose(LinDiffOp::d(i), LinDiffOp::from_coeffs({a.coeff(i)}));
    if (i % 2) term = negate(term);
    r = add(r, term);
  }
  return r;
}

bool op_equal(const LinDiffOp& a, const LinDiffOp& b) {
  if (a.coeffs().size() != b.coeffs().size()) return false;
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    if (!equals(a.coeffs()[i], b.coeffs()[i])) return false;
  return true;
}

bool is_self_adjoint(const LinDiffOp& a) { return op_equal(adjoint(a), a); }
bool is_skew_adjoint(const LinDiffOp& a) { return op_equal(adjoint(a), negate(a)); }

Expr apply(const LinDiffOp& a, const Expr& h) {
  if (mentions_jet(h)) throw DomainError("operators act on expressions in x only");
  Expr result = Expr::integer(0);
  Expr hder = normalize(h);
  for (int i = 0; i <= a.order(); ++i) {
    result = result + a.coeff(i) * hder;
    if (i < a.order()) hder = diff(hder);
  }
  return normalize(result);
}

DivisionResult divide(const LinDiffOp& a, const LinDiffOp& l) {
  if (!l.is_monic()) throw DomainError("division requires a monic divisor");
  if (l.order() < 1) throw DomainError("division requires a divisor of order >= 1");
  LinDiffOp quotient;
  LinDiffOp rem = a;
  while (!rem.is_zero() && rem.order() >= l.order()) {
    // cancel the top term: t = a_n d^(n - ord L), strictly lowers the order
    int n = rem.order();
    std::vector<Expr> tc(n - l.order() + 1, Expr::integer(0));
    tc.back() = rem.coeff(n);
    LinDiffOp t = LinDiffOp::from_coeffs(std::move(tc));
    quotient = add(quotient, t);
    rem = sub(rem, compose(t, l));
    if (!rem.is_zero() && rem.order() >= n)
      throw DomainError("division failed to reduce the order");  // unreachable for monic l
  }
  return DivisionResult{quotient, rem};
}

// ---------------------------------------------------------------------------
// Operator text form. Parsing goes through the expression grammar with D
// enabled, then collects a raw product tree into (coefficient, D-power)
// terms, rejecting anything the operator grammar does not allow: D inside
// parentheses/powers of sums, and non-constant factors to the right of D.

namespace {

void collect_term(const Expr& term, std::vector<std::pair<Expr, int>>& out);

void collect_factors(const Expr& factor, std::vector<Expr>& flat) {
  if (const auto* prod = std::get_if<ProductNode>(&factor.node().v)) {
    for (const auto& f : prod->factors) collect_factors(f, flat);
  } else {
    flat.push_back(factor);
  }
}

void collect_term(const Expr& term, std::vector<std::pair<Expr, int>>& out) {
  if (const auto* sum = std::get_if<SumNode>(&term.node().v)) {
    for (const auto& t : sum->terms) collect_term(t, out);
    return;
  }
  std::vector<Expr> factors;
  collect_factors(term, factors);
  Expr coeff = Expr::integer(1);
  int dpow = 0;
  bool seen_d = false;
  for (const auto& f : factors) {
    if (is_d_atom(f)) {
      dpow += 1;
      seen_d = true;
      continue;
    }
    if (const auto* pw = std::get_if<PowNode>(&f.node().v); pw && is_d_atom(pw->base)) {
      if (pw->exponent < 0) throw DomainError("negative powers of D are not operators");
      dpow += static_cast<int>(pw->exponent);
      seen_d = true;
      continue;
    }
    if (mentions_d_symbol(f))
      throw DomainError("operators must be sums of coefficient*D^k terms; "
                        "D cannot appear inside parentheses or powers");
    if (seen_d && !is_rational_const(f))
      throw DomainError("coefficients must multiply D from the left");
    coeff = coeff * f;
  }
  out.emplace_back(coeff, dpow);
}

bool needs_parens(const Expr& canonical_coeff) {
  return std::holds_alternative<SumNode>(canonical_coeff.node().v);
}

// -1, +1, or the whole coefficient when it is a single monomial whose sign
// can be pulled in front; multi-term coefficients keep their parentheses.
struct PrintedTerm {
  bool negative;
  std::string body;
};

PrintedTerm print_op_term(const Expr& coeff, int power) {
  Expr c = normalize(coeff);
  std::string dpart = power == 0 ? "" : (power == 1 ? "D" : "D^" + std::to_string(power));
  if (needs_parens(c)) return {false, "(" + to_string(c) + ")" + (dpart.empty() ? "" : "*" + dpart)};
  // single monomial: pull the sign out so sums print with binary +/-
  auto terms = canonical_terms(c);
  const auto& t = terms[0];  // nonzero single term
  bool neg = t.coeff.sign() < 0;
  CanonicalTerm abs_term{t.coeff.abs(), t.atoms};
  Expr abs_coeff = Expr::integer(0);
  {
    std::vector<Expr> factors;
    if (!(abs_term.coeff.is_one() && !abs_term.atoms.empty()))
      factors.push_back(Expr::rational(abs_term.coeff));
    for (const auto& [atom, exp] : abs_term.atoms)
      factors.push_back(exp == 1 ? atom : Expr::pow(atom, exp));
    abs_coeff = factors.size() == 1 ? factors[0] : Expr::product(factors);
  }
  std::string cs = to_string(abs_coeff);
  if (dpart.empty()) return {neg, cs};
  if (cs == "1") return {neg, dpart};
  return {neg, cs + "*" + dpart};
}

}  // namespace

LinDiffOp parse_op(std::string_view text) {
  Expr tree = parse_expression(text, /*allow_d=*/true);
  std::vector<std::pair<Expr, int>> terms;
  collect_term(tree, terms);
  std::vector<Expr> coeffs;
  for (const auto& [c, p] : terms) {
    if (mentions_jet(c)) throw DomainError("operator coefficients cannot mention jet variables");
    if (p >= static_cast<int>(coeffs.size())) coeffs.resize(p + 1, Expr::integer(0));
    coeffs[p] = coeffs[p] + c;
  }
  return LinDiffOp::from_coeffs(std::move(coeffs));
}

std::string to_string(const LinDiffOp& a) {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (int i = a.order(); i >= 0; --i) {
    if (is_zero(a.coeff(i))) continue;
    PrintedTerm t = print_op_term(a.coeff(i), i);
    if (first) {
      s += (t.negative ? "-" : "") + t.body;
      first = false;
    } else {
      s += (t.negative ? " - " : " + ") + t.body;
    }
  }
  return s;
}

std::string to_json(const LinDiffOp& a) {
  std::string s = "{\"coeffs\": [";
  for (size_t i = 0; i < a.coeffs().size(); ++i) {
    if (i) s += ", ";
    s += "\"" + to_string(a.coeffs()[i]) + "\"";
  }
  return s + "]}";
}

}  // namespace odesym
