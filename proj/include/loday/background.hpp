#pragma once

// Courant brackets with a closed form background psi and Poisson structures
// with background.
//
// Conventions: i_{x^y} = i_x i_y, psi(u,v,w) = i_w i_v i_u psi, a multivector
// W evaluates as W(xi,eta,...) = ... i_eta i_xi W and P#xi = i_xi P.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loday/algebroid.hpp"
#include "loday/cartan.hpp"
#include "loday/gca.hpp"
#include "loday/operator.hpp"
#include "loday/report.hpp"

namespace loday {

inline long form_degree(const Manifold& M, const Element& psi) {
  if (!M.is_form(psi)) throw GradingError("not a form: " + psi.to_string());
  return require_degree(psi, "form");
}

// d + e_psi for a form of odd degree. Rejects psi with d psi != 0 unless
// checked is unset.
inline Operator twisted_differential(const Manifold& M, const Element& psi, bool checked = true) {
  if (!psi.is_zero() && form_degree(M, psi) % 2 == 0)
    throw GradingError("the background must have odd degree: " + psi.to_string());
  Element dpsi = apply_d(M, psi);
  if (checked && !dpsi.is_zero()) throw NotClosed("d psi != 0", dpsi.to_string());
  if (psi.is_zero()) return M.d();
  return M.d() + Operator::multiply(psi, "e(" + psi.to_string() + ")");
}

// 1/2 [d^psi, d^psi], which should be e_{d psi}.
inline Operator twisted_square(const Manifold& M, const Element& psi) {
  Operator d = twisted_differential(M, psi, false);
  return Rational(1, 2) * commutator(d, d);
}

struct BackgroundBracket {
  GeneralizedVector value;
  std::optional<std::string> warning;
};

// [x+xi, y+eta] = [x,y] + L_x eta - i_y d xi + i_{x^y} psi.
inline BackgroundBracket background_dorfman(const Manifold& M, const Element& psi,
                                            const GeneralizedVector& a, const GeneralizedVector& b) {
  Element dpsi = apply_d(M, psi);
  if (!dpsi.is_zero()) throw NotClosed("d psi != 0", dpsi.to_string());
  BackgroundBracket out{dorfman(M, a, b), std::nullopt};
  if (!psi.is_zero()) {
    out.value.form += contract(M, a.vector, contract(M, b.vector, psi));
    long k = form_degree(M, psi);
    bool one_forms = true;
    for (const auto* f : {&a.form, &b.form})
      if (!f->is_zero() && require_degree(*f) != 1) one_forms = false;
    if (k != 3 && one_forms && !a.vector.is_zero() && !b.vector.is_zero())
      out.warning = "vector fields plus 1-forms are not closed under the bracket for a background of degree " +
                    std::to_string(k);
  }
  return out;
}

// [[i_x + e_xi, d^psi], i_y + e_eta]
inline Operator background_operator_bracket(const Manifold& M, const Element& psi,
                                            const GeneralizedVector& a, const GeneralizedVector& b) {
  Operator d = twisted_differential(M, psi);
  return bilinear(M, embed_generalized(M, a), embed_generalized(M, b),
                  [&](const Operator& u, const Operator& v) { return commutator(commutator(u, d), v); });
}

// Trivector (wedge^3 P#)(psi) with value psi(P#xi, P#eta, P#zeta).
inline Element lambda3_sharp(const Manifold& M, const Element& P, const Element& psi) {
  Element out(M.tensors());
  const int n = M.dim();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) {
        Element v = evaluate_form(M, psi, {sharp(M, P, M.dx(a)), sharp(M, P, M.dx(b)), sharp(M, P, M.dx(c))});
        if (!v.is_zero()) out += v * M.del(a) * M.del(b) * M.del(c);
      }
  return out;
}

// B_g with B_g(xi,eta) = psi(P#xi, P#eta, d_g).
inline Element lambda2_component(const Manifold& M, const Element& P, const Element& psi, int g) {
  Element B(M.tensors());
  const int n = M.dim();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      Element v = evaluate_form(M, psi, {sharp(M, P, M.dx(a)), sharp(M, P, M.dx(b)), M.del(g)});
      if (!v.is_zero()) B += v * M.del(a) * M.del(b);
    }
  return B;
}

// Bivector-valued 1-form (wedge^2 P#)(psi) with (x)(xi,eta) -> psi(P#xi, P#eta, x),
// written as sum_g dx^g (x) B_g.
inline Element lambda2_sharp(const Manifold& M, const Element& P, const Element& psi) {
  Element out(M.tensors());
  for (int g = 1; g <= M.dim(); ++g) out += M.dx(g) * lambda2_component(M, P, psi, g);
  return out;
}

struct WzwReport {
  Element lhs;  // 1/2 [P,P]
  Element rhs;  // (wedge^3 P#)(psi)
  Element residual;
  bool verdict = false;
};

inline WzwReport wzw_condition(const Manifold& M, const Element& P, const Element& psi) {
  WzwReport r;
  r.lhs = Rational(1, 2) * schouten(M, P, P);
  r.rhs = lambda3_sharp(M, P, psi);
  r.residual = r.lhs - r.rhs;
  r.verdict = r.residual.is_zero();
  return r;
}

// [xi,eta]^{P,psi} = [xi,eta]^P + i_{P#xi ^ P#eta} psi, with the first term
// from [[i_xi, d_P], i_eta] (P need not be Poisson).
inline Element background_form_bracket(const Manifold& M, const Element& P, const Element& psi,
                                       const Element& xi, const Element& eta) {
  PoissonManifold PM(M, P, false);
  Element k = PM.koszul(xi, eta);
  return k + contract(M, sharp(M, P, xi), contract(M, sharp(M, P, eta), psi));
}

// d_{P,psi} = d_P + i_{(wedge^2 P#)(psi)} as a derivation of Pi T*M functions:
// the second term kills functions and sends xt_g to B_g.
inline Derivation twisted_poisson_derivation(const Manifold& M, const Element& P,
                                             const Element& psi) {
  PoissonManifold PM(M, P, false);
  Derivation D = PM.d_P_derivation();
  for (int g = 1; g <= M.dim(); ++g) {
    Element B = lambda2_component(M, P, psi, g);
    D.set(M.xt_pos(g), D(M.xt(g)) + M.to_pit(B));
  }
  return D;
}

inline Element twisted_poisson_differential(const Manifold& M, const Element& P, const Element& psi,
                                            const Element& x) {
  if (!M.is_multivector(x)) throw GradingError("not a multivector: " + x.to_string());
  return M.from_pit(twisted_poisson_derivation(M, P, psi)(M.to_pit(x)));
}

// d_{P,psi}^2 on the generators of Pi T*M, as (generator, value) pairs that do not vanish.
inline std::vector<std::pair<std::string, Element>> twisted_poisson_square(const Manifold& M,
                                                                          const Element& P,
                                                                          const Element& psi) {
  Derivation D = twisted_poisson_derivation(M, P, psi);
  std::vector<std::pair<std::string, Element>> out;
  for (std::size_t g = 0; g < M.pit()->size(); ++g) {
    Element s = D(D(Element::generator(M.pit(), g)));
    if (!s.is_zero()) out.emplace_back(M.pit()->generator(g).name, M.from_pit(s));
  }
  return out;
}

// P#[xi,eta]^{P,psi} = [P#xi, P#eta] on pairs of 1-forms.
inline CheckReport check_background_anchor(const Manifold& M, const Element& P, const Element& psi,
                                           const std::vector<std::pair<Element, Element>>& pairs) {
  CheckReport report("P#[xi,eta]^{P,psi} = [P#xi,P#eta]");
  for (const auto& [xi, eta] : pairs) {
    Element r = sharp(M, P, background_form_bracket(M, P, psi, xi, eta)) -
                lie_bracket(M, sharp(M, P, xi), sharp(M, P, eta));
    report.record(r.is_zero(), {xi.to_string(), eta.to_string()}, r.to_string());
  }
  return report;
}

// (d_{P,psi} x)(xi,eta) = P#xi <eta,x> - P#eta <xi,x> - <[xi,eta]^{P,psi}, x>.
inline CheckReport check_dual_formula(const Manifold& M, const Element& P, const Element& psi,
                                      const std::vector<std::tuple<Element, Element, Element>> & cases) {
  CheckReport report("(d_{P,psi} x)(xi,eta)");
  for (const auto& [x, xi, eta] : cases) {
    Element lhs = evaluate_multivector(M, twisted_poisson_differential(M, P, psi, x), {xi, eta});
    Element rhs = apply_vector(M, sharp(M, P, xi), contract(M, x, eta)) -
                  apply_vector(M, sharp(M, P, eta), contract(M, x, xi)) -
                  contract(M, x, background_form_bracket(M, P, psi, xi, eta));
    Element r = lhs - rhs;
    report.record(r.is_zero(), {x.to_string(), xi.to_string(), eta.to_string()}, r.to_string());
  }
  return report;
}

}  // namespace loday
