#include "odesym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace odesym {

std::string func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
  }
  return "?";
}

Expr Expr::make(ExprNode&& n) {
  return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

Expr::Expr() : node_(std::make_shared<const ExprNode>(ExprNode{RationalNode{Rational(0)}})) {}

Expr Expr::rational(Rational r) { return make(ExprNode{RationalNode{std::move(r)}}); }
Expr Expr::integer(long long v) { return rational(Rational(v)); }
Expr Expr::x() { return make(ExprNode{VarNode{kIndexX}}); }
Expr Expr::d_symbol() { return make(ExprNode{VarNode{kIndexD}}); }

Expr Expr::jet(int index) {
  if (index < 0) throw DomainError("jet variable index must be nonnegative");
  return make(ExprNode{VarNode{index}});
}

Expr Expr::func_sym(std::string name, int order) {
  if (order < 0) throw DomainError("function symbol derivative order must be nonnegative");
  return make(ExprNode{FuncSymNode{std::move(name), order}});
}

Expr Expr::apply(Func f, Expr arg) { return make(ExprNode{ApplyNode{f, std::move(arg)}}); }
Expr Expr::sum(std::vector<Expr> terms) { return make(ExprNode{SumNode{std::move(terms)}}); }
Expr Expr::product(std::vector<Expr> factors) { return make(ExprNode{ProductNode{std::move(factors)}}); }
Expr Expr::pow(Expr base, long long exponent) {
  return make(ExprNode{PowNode{std::move(base), exponent}});
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) {
  return Expr::sum({a, Expr::product({Expr::integer(-1), b})});
}
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr Expr::operator-() const { return Expr::product({Expr::integer(-1), *this}); }

// ---------------------------------------------------------------------------
// Canonical polynomial engine. A Term is an exact rational coefficient
// times a sorted list of (atom, exponent) pairs; a Poly is the term list
// in display order. All semantic operations go through this form.
//
// Atoms are interned into a thread-local table so the hot paths (monomial
// merges and term sorts) compare small integers instead of re-walking
// expression trees.

namespace {

using AtomPow = std::pair<int, int>;  // (atom id, exponent > 0)

struct Term {
  Rational coeff;
  std::vector<AtomPow> atoms;
};

using Poly = std::vector<Term>;

int kind_rank(const ExprNode& n) {
  // Atom ordering contract: x < p0 < p1 < ... < FuncSym < Apply; D last.
  return std::visit(
      [](const auto& k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, RationalNode>) return 0;
        if constexpr (std::is_same_v<T, VarNode>)
          return k.index == kIndexX ? 1 : (k.index == kIndexD ? 5 : 2);
        if constexpr (std::is_same_v<T, FuncSymNode>) return 3;
        if constexpr (std::is_same_v<T, ApplyNode>) return 4;
        if constexpr (std::is_same_v<T, SumNode>) return 6;
        if constexpr (std::is_same_v<T, ProductNode>) return 7;
        if constexpr (std::is_same_v<T, PowNode>) return 8;
        return 9;
      },
      n.v);
}

int cmp_expr(const Expr& a, const Expr& b);

int cmp_vec(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i)
    if (int c = cmp_expr(a[i], b[i])) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int cmp_expr(const Expr& a, const Expr& b) {
  int ra = kind_rank(a.node()), rb = kind_rank(b.node());
  if (ra != rb) return ra < rb ? -1 : 1;
  const auto& na = a.node().v;
  const auto& nb = b.node().v;
  if (const auto* x = std::get_if<RationalNode>(&na)) {
    const auto& y = std::get<RationalNode>(nb);
    if (x->value == y.value) return 0;
    return x->value < y.value ? -1 : 1;
  }
  if (const auto* x = std::get_if<VarNode>(&na)) {
    const auto& y = std::get<VarNode>(nb);
    return x->index == y.index ? 0 : (x->index < y.index ? -1 : 1);
  }
  if (const auto* x = std::get_if<FuncSymNode>(&na)) {
    const auto& y = std::get<FuncSymNode>(nb);
    if (int c = x->name.compare(y.name)) return c < 0 ? -1 : 1;
    return x->order == y.order ? 0 : (x->order < y.order ? -1 : 1);
  }
  if (const auto* x = std::get_if<ApplyNode>(&na)) {
    const auto& y = std::get<ApplyNode>(nb);
    if (x->fn != y.fn) return static_cast<int>(x->fn) < static_cast<int>(y.fn) ? -1 : 1;
    return cmp_expr(x->arg, y.arg);
  }
  if (const auto* x = std::get_if<SumNode>(&na)) return cmp_vec(x->terms, std::get<SumNode>(nb).terms);
  if (const auto* x = std::get_if<ProductNode>(&na))
    return cmp_vec(x->factors, std::get<ProductNode>(nb).factors);
  const auto& x = std::get<PowNode>(na);
  const auto& y = std::get<PowNode>(nb);
  if (int c = cmp_expr(x.base, y.base)) return c;
  return x.exponent == y.exponent ? 0 : (x.exponent < y.exponent ? -1 : 1);
}

std::string atom_key(const Expr& atom);

/// Thread-local atom registry. Ids are stable for the thread's lifetime;
/// the pairwise order is memoized so monomial comparisons never re-walk
/// trees. Canonical trees built by the engine reference the table-owned
/// atom nodes, which keeps the pointer fast path hot and the maps small.
class AtomTable {
 public:
  int intern(const Expr& atom) {
    auto hit = by_node_.find(&atom.node());
    if (hit != by_node_.end()) return hit->second;
    std::string key = atom_key(atom);
    auto it = by_key_.find(key);
    if (it != by_key_.end()) return it->second;
    int id = static_cast<int>(atoms_.size());
    atoms_.push_back(atom);
    by_key_.emplace(std::move(key), id);
    by_node_.emplace(&atoms_[id].node(), id);
    for (auto& row : order_) row.push_back(2);  // 2 = not yet compared
    order_.emplace_back(atoms_.size(), int8_t{2});
    return id;
  }

  const Expr& expr_of(int id) const { return atoms_[id]; }

  int cmp(int a, int b) {
    if (a == b) return 0;
    int8_t& memo = order_[a][b];
    if (memo == 2) {
      int c = cmp_expr(atoms_[a], atoms_[b]);
      memo = static_cast<int8_t>(c < 0 ? -1 : 1);
      order_[b][a] = static_cast<int8_t>(-memo);
    }
    return memo;
  }

 private:
  std::vector<Expr> atoms_;
  std::unordered_map<std::string, int> by_key_;
  std::unordered_map<const ExprNode*, int> by_node_;
  std::vector<std::vector<int8_t>> order_;
};

AtomTable& atom_table() {
  thread_local AtomTable table;
  return table;
}

std::string atom_key(const Expr& atom) {
  const auto& v = atom.node().v;
  if (const auto* var = std::get_if<VarNode>(&v)) {
    if (var->index == kIndexX) return "v:x";
    if (var->index == kIndexD) return "v:D";
    return "j:" + std::to_string(var->index);
  }
  if (const auto* fs = std::get_if<FuncSymNode>(&v))
    return "f:" + fs->name + ":" + std::to_string(fs->order);
  if (const auto* ap = std::get_if<ApplyNode>(&v))
    return "a:" + std::to_string(static_cast<int>(ap->fn)) + ":" + to_string(ap->arg);
  throw DomainError("unexpected non-atom in canonical form");
}

long long mono_degree(const std::vector<AtomPow>& m) {
  long long d = 0;
  for (const auto& [a, e] : m) d += e;
  return d;
}

// Display order: higher total degree first, then lexicographic by atom
// (smaller atom first, larger exponent first). Returns <0 when a comes
// before b.
int cmp_mono(const std::vector<AtomPow>& a, const std::vector<AtomPow>& b) {
  long long da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db ? -1 : 1;
  AtomTable& tab = atom_table();
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (int c = tab.cmp(a[i].first, b[i].first)) return c;
    if (a[i].second != b[i].second) return a[i].second > b[i].second ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

void canonicalize(Poly& p) {
  std::sort(p.begin(), p.end(),
            [](const Term& a, const Term& b) { return cmp_mono(a.atoms, b.atoms) < 0; });
  Poly out;
  for (auto& t : p) {
    if (!out.empty() && out.back().atoms == t.atoms)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term& t) { return t.coeff.is_zero(); }),
            out.end());
  p = std::move(out);
}

Poly poly_zero() { return {}; }
Poly poly_const(Rational r) {
  if (r.is_zero()) return {};
  return {Term{std::move(r), {}}};
}
Poly poly_atom(const Expr& atom) {
  return {Term{Rational(1), {{atom_table().intern(atom), 1}}}};
}

std::vector<AtomPow> mono_mul(const std::vector<AtomPow>& a, const std::vector<AtomPow>& b) {
  std::vector<AtomPow> r;
  r.reserve(a.size() + b.size());
  AtomTable& tab = atom_table();
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = tab.cmp(a[i].first, b[j].first);
    if (c == 0) {
      long long exp = static_cast<long long>(a[i].second) + b[j].second;
      if (exp > INT32_MAX) throw DomainError("monomial exponent overflow");
      r.emplace_back(a[i].first, static_cast<int>(exp));
      ++i, ++j;
    } else if (c < 0) {
      r.push_back(a[i++]);
    } else {
      r.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  r.reserve(a.size() * b.size());
  for (const auto& ta : a)
    for (const auto& tb : b)
      r.push_back(Term{ta.coeff * tb.coeff, mono_mul(ta.atoms, tb.atoms)});
  canonicalize(r);
  return r;
}

Poly poly_scale(const Rational& c, Poly p) {
  if (c.is_zero()) return {};
  for (auto& t : p) t.coeff *= c;
  return p;
}

Poly poly_pow(const Poly& base, long long e) {
  Poly acc = poly_const(Rational(1));
  Poly b = base;
  while (e > 0) {
    if (e & 1) acc = poly_mul(acc, b);
    e >>= 1;
    if (e) b = poly_mul(b, b);
  }
  return acc;
}

Poly to_poly(const Expr& e);

Expr canonical_apply(Func fn, const Expr& arg) { return Expr::apply(fn, normalize(arg)); }

Poly to_poly(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> Poly {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, RationalNode>) return poly_const(n.value);
        if constexpr (std::is_same_v<T, VarNode>) return poly_atom(e);
        if constexpr (std::is_same_v<T, FuncSymNode>) return poly_atom(e);
        if constexpr (std::is_same_v<T, ApplyNode>) return poly_atom(canonical_apply(n.fn, n.arg));
        if constexpr (std::is_same_v<T, SumNode>) {
          Poly r;
          for (const auto& t : n.terms) {
            Poly p = to_poly(t);
            r.insert(r.end(), p.begin(), p.end());
          }
          canonicalize(r);
          return r;
        }
        if constexpr (std::is_same_v<T, ProductNode>) {
          Poly r = poly_const(Rational(1));
          for (const auto& f : n.factors) r = poly_mul(r, to_poly(f));
          return r;
        }
        if constexpr (std::is_same_v<T, PowNode>) {
          if (n.exponent > 1000000 || n.exponent < -1000000)
            throw DomainError("exponent too large");
          if (n.exponent >= 0) return poly_pow(to_poly(n.base), n.exponent);
          Poly b = to_poly(n.base);
          if (b.size() == 1 && b[0].atoms.empty())
            return poly_const(b[0].coeff.pow(n.exponent));
          if (b.empty()) throw DomainError("zero raised to a negative power");
          throw DomainError("negative exponent on a non-constant base");
        }
        return poly_zero();
      },
      e.node().v);
}

Expr term_to_expr(const Term& t) {
  AtomTable& tab = atom_table();
  std::vector<Expr> factors;
  if (!(t.coeff.is_one() && !t.atoms.empty())) factors.push_back(Expr::rational(t.coeff));
  for (const auto& [atom, exp] : t.atoms)
    factors.push_back(exp == 1 ? tab.expr_of(atom) : Expr::pow(tab.expr_of(atom), exp));
  if (factors.size() == 1) return factors[0];
  return Expr::product(std::move(factors));
}

Expr from_poly(const Poly& p) {
  if (p.empty()) return Expr::integer(0);
  if (p.size() == 1) return term_to_expr(p[0]);
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& t : p) terms.push_back(term_to_expr(t));
  return Expr::sum(std::move(terms));
}

bool poly_equal(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].atoms != b[i].atoms || !(a[i].coeff == b[i].coeff)) return false;
  return true;
}

// --- derivatives ------------------------------------------------------------

enum class DerivMode { X, Jet };

Poly poly_derivative(const Poly& p, DerivMode mode, int jet_idx);

Poly atom_derivative(const Expr& atom, DerivMode mode, int jet_idx) {
  const auto& v = atom.node().v;
  if (const auto* var = std::get_if<VarNode>(&v)) {
    if (var->index == kIndexD)
      throw DomainError("the operator symbol D cannot be differentiated as an expression");
    if (mode == DerivMode::X) return var->index == kIndexX ? poly_const(Rational(1)) : poly_zero();
    return var->index == jet_idx ? poly_const(Rational(1)) : poly_zero();
  }
  if (const auto* fs = std::get_if<FuncSymNode>(&v)) {
    if (mode == DerivMode::Jet) return poly_zero();
    return poly_atom(Expr::func_sym(fs->name, fs->order + 1));
  }
  if (const auto* ap = std::get_if<ApplyNode>(&v)) {
    Poly inner = poly_derivative(to_poly(ap->arg), mode, jet_idx);
    if (inner.empty()) return poly_zero();
    Poly outer;
    switch (ap->fn) {
      case Func::Sin: outer = poly_atom(canonical_apply(Func::Cos, ap->arg)); break;
      case Func::Cos: outer = poly_scale(Rational(-1), poly_atom(canonical_apply(Func::Sin, ap->arg))); break;
      case Func::Exp: outer = poly_atom(canonical_apply(Func::Exp, ap->arg)); break;
    }
    return poly_mul(outer, inner);
  }
  throw DomainError("unexpected non-atom in canonical form");
}

Poly poly_derivative(const Poly& p, DerivMode mode, int jet_idx) {
  AtomTable& tab = atom_table();
  Poly result;
  for (const auto& t : p) {
    for (size_t k = 0; k < t.atoms.size(); ++k) {
      Poly d = atom_derivative(tab.expr_of(t.atoms[k].first), mode, jet_idx);
      if (d.empty()) continue;
      Term rest;
      rest.coeff = t.coeff * Rational(t.atoms[k].second);
      for (size_t j = 0; j < t.atoms.size(); ++j) {
        if (j == k) {
          if (t.atoms[k].second > 1) rest.atoms.emplace_back(t.atoms[k].first, t.atoms[k].second - 1);
        } else {
          rest.atoms.push_back(t.atoms[j]);
        }
      }
      Poly piece = poly_mul(Poly{rest}, d);
      result.insert(result.end(), piece.begin(), piece.end());
    }
  }
  canonicalize(result);
  return result;
}

// --- printing ---------------------------------------------------------------

std::string poly_to_string(const Poly& p);

std::string atom_to_string(const Expr& atom) {
  const auto& v = atom.node().v;
  if (const auto* var = std::get_if<VarNode>(&v)) {
    if (var->index == kIndexX) return "x";
    if (var->index == kIndexD) return "D";
    return "p" + std::to_string(var->index);
  }
  if (const auto* fs = std::get_if<FuncSymNode>(&v))
    return fs->name + std::string(fs->order, '\'');
  if (const auto* ap = std::get_if<ApplyNode>(&v))
    return func_name(ap->fn) + "(" + poly_to_string(to_poly(ap->arg)) + ")";
  throw DomainError("unexpected non-atom in canonical form");
}

std::string term_body_to_string(const Term& t, const Rational& abs_coeff) {
  AtomTable& tab = atom_table();
  std::vector<std::string> parts;
  if (!abs_coeff.is_one() || t.atoms.empty()) parts.push_back(abs_coeff.to_string());
  for (const auto& [atom, exp] : t.atoms) {
    std::string a = atom_to_string(tab.expr_of(atom));
    parts.push_back(exp == 1 ? a : a + "^" + std::to_string(exp));
  }
  std::string s = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) s += "*" + parts[i];
  return s;
}

std::string poly_to_string(const Poly& p) {
  if (p.empty()) return "0";
  // lead with the first positive term so sums read "2*H - G^2" rather
  // than "-G^2 + 2*H"
  size_t lead = 0;
  while (lead < p.size() && p[lead].coeff.sign() < 0) ++lead;
  if (lead == p.size()) lead = 0;
  std::string s;
  for (size_t k = 0; k < p.size(); ++k) {
    const Term& t = p[(lead + k) % p.size()];
    bool neg = t.coeff.sign() < 0;
    if (k == 0)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    s += term_body_to_string(t, t.coeff.abs());
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

Expr normalize(const Expr& e) { return from_poly(to_poly(e)); }

bool equals(const Expr& a, const Expr& b) { return poly_equal(to_poly(a), to_poly(b)); }

bool is_zero(const Expr& e) { return to_poly(e).empty(); }

int compare_canonical(const Expr& a, const Expr& b) { return cmp_expr(a, b); }

Expr partial_x(const Expr& e) { return from_poly(poly_derivative(to_poly(e), DerivMode::X, 0)); }

Expr partial_jet(const Expr& e, int index) {
  return from_poly(poly_derivative(to_poly(e), DerivMode::Jet, index));
}

Expr diff(const Expr& e) {
  if (mentions_jet(e))
    throw DomainError("diff is defined on expressions in x only; use the jet module's total derivative");
  return partial_x(e);
}

Expr replace_func_syms(const Expr& e,
                       const std::function<std::optional<Expr>(const std::string&, int)>& hook) {
  Expr rewritten = std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FuncSymNode>) {
          if (auto r = hook(n.name, n.order)) return *r;
          return e;
        } else if constexpr (std::is_same_v<T, ApplyNode>) {
          return Expr::apply(n.fn, replace_func_syms(n.arg, hook));
        } else if constexpr (std::is_same_v<T, SumNode>) {
          std::vector<Expr> ts;
          ts.reserve(n.terms.size());
          for (const auto& t : n.terms) ts.push_back(replace_func_syms(t, hook));
          return Expr::sum(std::move(ts));
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          std::vector<Expr> fs;
          fs.reserve(n.factors.size());
          for (const auto& f : n.factors) fs.push_back(replace_func_syms(f, hook));
          return Expr::product(std::move(fs));
        } else if constexpr (std::is_same_v<T, PowNode>) {
          return Expr::pow(replace_func_syms(n.base, hook), n.exponent);
        } else {
          return e;
        }
      },
      e.node().v);
  return normalize(rewritten);
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
  for (const auto& [name, value] : bindings) {
    (void)name;
    for (const auto& used : func_sym_names(value))
      if (bindings.count(used))
        throw DomainError("recursive binding: '" + used + "' appears in a binding value");
  }
  // derivatives of each binding, computed on demand
  std::map<std::string, std::vector<Expr>> derivs;
  auto hook = [&](const std::string& name, int order) -> std::optional<Expr> {
    auto it = bindings.find(name);
    if (it == bindings.end()) return std::nullopt;
    auto& tower = derivs[name];
    if (tower.empty()) tower.push_back(normalize(it->second));
    while (static_cast<int>(tower.size()) <= order) tower.push_back(diff(tower.back()));
    return tower[order];
  };
  return replace_func_syms(e, hook);
}

double eval_numeric(const Expr& e, const EvalPoint& point) {
  double r = std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, RationalNode>) return n.value.to_double();
        if constexpr (std::is_same_v<T, VarNode>) {
          if (n.index == kIndexX) return point.x;
          if (n.index == kIndexD) throw DomainError("cannot evaluate the operator symbol D");
          auto it = point.jet.find(n.index);
          if (it == point.jet.end())
            throw DomainError("unbound jet variable p" + std::to_string(n.index));
          return it->second;
        }
        if constexpr (std::is_same_v<T, FuncSymNode>) {
          auto it = point.funcs.find(n.name);
          if (it == point.funcs.end()) throw DomainError("unbound function symbol " + n.name);
          return it->second(n.order, point.x);
        }
        if constexpr (std::is_same_v<T, ApplyNode>) {
          double a = eval_numeric(n.arg, point);
          switch (n.fn) {
            case Func::Sin: return std::sin(a);
            case Func::Cos: return std::cos(a);
            case Func::Exp: return std::exp(a);
          }
        }
        if constexpr (std::is_same_v<T, SumNode>) {
          double s = 0;
          for (const auto& t : n.terms) s += eval_numeric(t, point);
          return s;
        }
        if constexpr (std::is_same_v<T, ProductNode>) {
          double s = 1;
          for (const auto& f : n.factors) s *= eval_numeric(f, point);
          return s;
        }
        if constexpr (std::is_same_v<T, PowNode>)
          return std::pow(eval_numeric(n.base, point), static_cast<double>(n.exponent));
        return 0.0;
      },
      normalize(e).node().v);
  if (!std::isfinite(r)) throw DomainError("numeric evaluation produced a non-finite value");
  return r;
}

std::string to_string(const Expr& e) { return poly_to_string(to_poly(e)); }

// --- structure queries ------------------------------------------------------

namespace {

template <typename F>
void walk(const Expr& e, const F& visit_node) {
  visit_node(e);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ApplyNode>) walk(n.arg, visit_node);
        if constexpr (std::is_same_v<T, SumNode>)
          for (const auto& t : n.terms) walk(t, visit_node);
        if constexpr (std::is_same_v<T, ProductNode>)
          for (const auto& f : n.factors) walk(f, visit_node);
        if constexpr (std::is_same_v<T, PowNode>) walk(n.base, visit_node);
      },
      e.node().v);
}

}  // namespace

int max_jet_index(const Expr& e) {
  int mx = -1;
  walk(e, [&](const Expr& n) {
    if (const auto* var = std::get_if<VarNode>(&n.node().v))
      if (var->index >= 0) mx = std::max(mx, var->index);
  });
  return mx;
}

bool mentions_jet(const Expr& e) { return max_jet_index(e) >= 0; }

bool mentions_d_symbol(const Expr& e) {
  bool found = false;
  walk(e, [&](const Expr& n) {
    if (const auto* var = std::get_if<VarNode>(&n.node().v))
      if (var->index == kIndexD) found = true;
  });
  return found;
}

std::set<std::string> func_sym_names(const Expr& e) {
  std::set<std::string> names;
  walk(e, [&](const Expr& n) {
    if (const auto* fs = std::get_if<FuncSymNode>(&n.node().v)) names.insert(fs->name);
  });
  return names;
}

std::vector<CanonicalTerm> canonical_terms(const Expr& e) {
  AtomTable& tab = atom_table();
  std::vector<CanonicalTerm> out;
  for (const auto& t : to_poly(e)) {
    CanonicalTerm ct;
    ct.coeff = t.coeff;
    for (const auto& [id, exp] : t.atoms) ct.atoms.emplace_back(tab.expr_of(id), exp);
    out.push_back(std::move(ct));
  }
  return out;
}

Expr expr_from_term(const CanonicalTerm& t) {
  Term internal{t.coeff, {}};
  AtomTable& tab = atom_table();
  for (const auto& [atom, exp] : t.atoms) internal.atoms.emplace_back(tab.intern(atom), exp);
  return term_to_expr(internal);
}

bool is_rational_const(const Expr& e, Rational* value) {
  Poly p = to_poly(e);
  if (p.empty()) {
    if (value) *value = Rational(0);
    return true;
  }
  if (p.size() == 1 && p[0].atoms.empty()) {
    if (value) *value = p[0].coeff;
    return true;
  }
  return false;
}

bool is_var_x(const Expr& e) {
  const auto* var = std::get_if<VarNode>(&e.node().v);
  return var && var->index == kIndexX;
}

bool is_d_atom(const Expr& e) {
  const auto* var = std::get_if<VarNode>(&e.node().v);
  return var && var->index == kIndexD;
}

std::optional<int> jet_index_of(const Expr& e) {
  const auto* var = std::get_if<VarNode>(&e.node().v);
  if (var && var->index >= 0) return var->index;
  return std::nullopt;
}

std::optional<std::pair<std::string, int>> func_sym_parts(const Expr& e) {
  if (const auto* fs = std::get_if<FuncSymNode>(&e.node().v))
    return std::make_pair(fs->name, fs->order);
  return std::nullopt;
}

}  // namespace odesym
