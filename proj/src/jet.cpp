#include "odesym/jet.hpp"

namespace odesym {

JetContext::JetContext(int k_, Expr F) : k(k_), rhs(normalize(F)) {
  if (k < 0) throw DomainError("jet order must be nonnegative");
  if (max_jet_index(rhs) > k)
    throw DomainError("F mentions a jet variable beyond p" + std::to_string(k));
  if (mentions_d_symbol(rhs)) throw DomainError("F cannot mention the operator symbol D");
}

Expr total_derivative(const JetContext& ctx, const Expr& e) {
  if (max_jet_index(e) > ctx.k)
    throw DomainError("expression mentions a jet variable beyond p" + std::to_string(ctx.k));
  Expr r = partial_x(e);
  for (int i = 0; i < ctx.k; ++i) r = r + Expr::jet(i + 1) * partial_jet(e, i);
  r = r + ctx.rhs * partial_jet(e, ctx.k);
  return normalize(r);
}

namespace {

// generating functions are polynomials in the jet variables: jets may
// not hide inside sin/cos/exp arguments
void require_polynomial_in_jets(const Expr& f) {
  for (const auto& t : canonical_terms(f))
    for (const auto& [atom, exp] : t.atoms)
      if (!jet_index_of(atom) && mentions_jet(atom))
        throw DomainError("generating functions must be polynomial in the jet variables");
}

}  // namespace

std::vector<Expr> shuffle_field(const JetContext& ctx, const Expr& f) {
  require_polynomial_in_jets(f);
  std::vector<Expr> comps;
  comps.reserve(ctx.k + 1);
  comps.push_back(normalize(f));
  for (int i = 0; i < ctx.k; ++i) comps.push_back(total_derivative(ctx, comps.back()));
  return comps;
}

Expr lie_equation_residual(const JetContext& ctx, const Expr& f) {
  require_polynomial_in_jets(f);
  std::vector<Expr> tower;  // f, D(f), ..., D^(k+1)(f)
  tower.push_back(normalize(f));
  for (int i = 0; i <= ctx.k; ++i) tower.push_back(total_derivative(ctx, tower.back()));
  Expr r = tower[ctx.k + 1];
  for (int i = 0; i <= ctx.k; ++i) r = r - partial_jet(ctx.rhs, i) * tower[i];
  return normalize(r);
}

Expr poisson_lie_bracket(const JetContext& ctx, const Expr& f, const Expr& g) {
  require_polynomial_in_jets(f);
  require_polynomial_in_jets(g);
  std::vector<Expr> df = shuffle_field(ctx, f);
  std::vector<Expr> dg = shuffle_field(ctx, g);
  Expr r = Expr::integer(0);
  for (int i = 0; i <= ctx.k; ++i)
    r = r + df[i] * partial_jet(g, i) - dg[i] * partial_jet(f, i);
  return normalize(r);
}

LinDiffOp linear_genfunc_to_op(const Expr& f) {
  std::vector<Expr> coeffs;
  for (const auto& term : canonical_terms(f)) {
    int jet_idx = -1;
    CanonicalTerm rest{term.coeff, {}};
    for (const auto& [atom, exp] : term.atoms) {
      if (auto idx = jet_index_of(atom)) {
        if (jet_idx >= 0 || exp != 1)
          throw DomainError("generating function is not linear in the jet variables");
        jet_idx = *idx;
      } else {
        if (mentions_jet(atom))
          throw DomainError("generating function has jet variables inside function arguments");
        rest.atoms.emplace_back(atom, exp);
      }
    }
    if (jet_idx < 0)
      throw DomainError("generating function is not homogeneous linear in the jet variables");
    if (jet_idx >= static_cast<int>(coeffs.size())) coeffs.resize(jet_idx + 1, Expr::integer(0));
    coeffs[jet_idx] = coeffs[jet_idx] + expr_from_term(rest);
  }
  return LinDiffOp::from_coeffs(std::move(coeffs));
}

Expr op_to_linear_genfunc(const LinDiffOp& delta, int k) {
  if (delta.order() > k)
    throw DomainError("operator order exceeds the jet order");
  Expr f = Expr::integer(0);
  for (int i = 0; i <= delta.order(); ++i) f = f + delta.coeff(i) * Expr::jet(i);
  return normalize(f);
}

std::pair<Expr, Expr> affine_genfunc_to_point_field(const Expr& f) {
  if (max_jet_index(f) > 1)
    throw DomainError("point-field form requires f affine in p1 with no higher jets");
  Expr a = Expr::integer(0);  // coefficient of p1
  Expr b = Expr::integer(0);
  for (const auto& term : canonical_terms(f)) {
    int p1_exp = 0;
    CanonicalTerm rest{term.coeff, {}};
    for (const auto& [atom, exp] : term.atoms) {
      if (auto idx = jet_index_of(atom); idx && *idx == 1) {
        p1_exp = exp;
      } else {
        if (mentions_jet(atom) && max_jet_index(atom) > 0)
          throw DomainError("point-field form requires p1 only outside function arguments");
        rest.atoms.emplace_back(atom, exp);
      }
    }
    if (p1_exp > 1) throw DomainError("f is not affine in p1");
    if (p1_exp == 1)
      a = a + expr_from_term(rest);
    else
      b = b + expr_from_term(rest);
  }
  return {normalize(b), normalize(-a)};
}

JetContext jet_context_for(const LinDiffOp& l) {
  if (!l.is_monic() || l.order() < 1)
    throw DomainError("equation context requires a monic operator of order >= 1");
  int k = l.order() - 1;
  Expr F = Expr::integer(0);
  for (int i = 0; i <= k; ++i) F = F - l.coeff(i) * Expr::jet(i);
  return JetContext(k, normalize(F));
}

}  // namespace odesym
