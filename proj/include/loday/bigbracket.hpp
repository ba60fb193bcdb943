#pragma once

// Finite-dimensional Lie algebras through the big bracket on Lambda(E + E*).
//
// For a basis named b1..bn of E the big context has odd generators b1..bn and
// b1'..bn' (the dual basis), all of degree 1, with {b_i, b_j'} = delta_ij and
// bracket degree -2. The structure mu(b_i,b_j) = C^k_ij b_k is packaged as
//   mu = 1/2 C^k_ij b_k b_j' b_i'
// so that {{x,mu},y} = [x,y] on E.
//
// The linear Poisson structure lives on a second context: b1..bn even of
// degree 0 (linear functions on E*) and b1'..bn' odd of degree 1, with the
// Schouten bracket {b_i', b_j} = delta_ij of degree -1.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "loday/brackets.hpp"
#include "loday/gca.hpp"
#include "loday/operator.hpp"
#include "loday/report.hpp"

namespace loday {

// C^k_ij keyed by (i, j, k), zero based. Only i < j needs to be given; the
// other order is filled in by antisymmetry.
using StructureConstants = std::map<std::tuple<int, int, int>, Rational>;

class LieStructure {
 public:
  // Throws NotLieAlgebra (with {mu,mu}) when Jacobi fails and checked is set.
  LieStructure(std::vector<std::string> basis, const StructureConstants& constants,
               bool checked = true)
      : basis_(std::move(basis)) {
    const int n = dim();
    if (n < 1 || n > 30) throw Error("Lie algebra dimension must be between 1 and 30");
    C_.assign(std::size_t(n * n * n), Rational(0));
    for (const auto& [key, c] : constants) {
      auto [i, j, k] = key;
      if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
        throw Error("structure constant index out of range");
      if (i == j) {
        if (c != 0) throw Error("structure constants must be antisymmetric");
        continue;
      }
      Rational& a = at(i, j, k);
      Rational& b = at(j, i, k);
      if ((a != 0 && a != c) || (b != 0 && b != -c))
        throw Error("inconsistent structure constants for (" + basis_[std::size_t(i)] + ", " +
                    basis_[std::size_t(j)] + ")");
      a = c;
      b = -c;
    }

    std::vector<Generator> big, lin;
    for (const auto& b : basis_) big.push_back({b, 1});
    for (const auto& b : basis_) big.push_back({b + "'", 1});
    for (const auto& b : basis_) lin.push_back({b, 0});
    for (const auto& b : basis_) lin.push_back({b + "'", 1});
    big_ctx_ = Context::make(big);
    lin_ctx_ = Context::make(lin);
    big_ = BracketStructure(big_ctx_, -2);
    lin_ = BracketStructure(lin_ctx_, -1);
    for (int i = 0; i < n; ++i) {
      big_.set(std::size_t(i), std::size_t(n + i), Element(big_ctx_, 1));
      lin_.set(std::size_t(n + i), std::size_t(i), Element(lin_ctx_, 1));
    }

    mu_ = Element(big_ctx_);
    mu_lin_ = Element(lin_ctx_);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Rational& c = at(i, j, k);
          if (c == 0) continue;
          Rational h = c / 2;
          mu_ += h * (e(k) * dual(j) * dual(i));
          mu_lin_ += h * (Element::generator(lin_ctx_, std::size_t(k)) *
                          Element::generator(lin_ctx_, std::size_t(n + j)) *
                          Element::generator(lin_ctx_, std::size_t(n + i)));
        }

    Element sq = big_(mu_, mu_);
    jacobi_ok_ = sq.is_zero();
    if (checked && !jacobi_ok_) throw NotLieAlgebra("{mu,mu} != 0", sq.to_string());
  }

  int dim() const { return int(basis_.size()); }
  const std::vector<std::string>& basis() const { return basis_; }
  const Rational& constant(int i, int j, int k) const {
    return C_[std::size_t((i * dim() + j) * dim() + k)];
  }
  bool is_lie() const { return jacobi_ok_; }

  const ContextPtr& big_context() const { return big_ctx_; }
  const ContextPtr& linear_context() const { return lin_ctx_; }
  const BracketStructure& big() const { return big_; }
  const BracketStructure& linear_schouten() const { return lin_; }
  const Element& mu() const { return mu_; }
  // mu as a linear bivector field on E*.
  const Element& mu_bivector() const { return mu_lin_; }

  Element e(int i) const { return Element::generator(big_ctx_, std::size_t(i)); }
  Element dual(int i) const { return Element::generator(big_ctx_, std::size_t(dim() + i)); }

  // Carrier of Lambda E* inside the big context.
  Carrier cochains() const {
    Carrier c;
    for (int i = 0; i < dim(); ++i) c.odd.push_back(std::size_t(dim() + i));
    return c;
  }

  // Contractions b_i -> d/d b_i' for interior products by elements of Lambda E.
  std::vector<Contraction> contractions() const {
    std::vector<Contraction> out;
    for (int i = 0; i < dim(); ++i) out.push_back({std::size_t(i), std::size_t(dim() + i)});
    return out;
  }

  // Element of E with the given coefficients, as a bracket value.
  Element bracket_of_basis(int i, int j) const {
    Element out(big_ctx_);
    for (int k = 0; k < dim(); ++k)
      if (constant(i, j, k) != 0) out += constant(i, j, k) * e(k);
    return out;
  }

  // d_mu = {mu, .} as a derivation of the big context.
  Derivation ce_derivation() const {
    Derivation d(big_ctx_, 1);
    for (std::size_t g = 0; g < big_ctx_->size(); ++g)
      d.set(g, big_(mu_, Element::generator(big_ctx_, g)));
    return d;
  }

 private:
  Rational& at(int i, int j, int k) { return C_[std::size_t((i * dim() + j) * dim() + k)]; }

  std::vector<std::string> basis_;
  std::vector<Rational> C_;
  ContextPtr big_ctx_, lin_ctx_;
  BracketStructure big_, lin_;
  Element mu_, mu_lin_;
  bool jacobi_ok_ = false;
};

// Jacobi by the triple sum over indices, independent of the big bracket.
inline Element jacobi_defect(const LieStructure& g, int i, int j, int k) {
  Element out(g.big_context());
  const int n = g.dim();
  for (int m = 0; m < n; ++m) {
    Rational s = 0;
    for (int l = 0; l < n; ++l)
      s += g.constant(i, j, l) * g.constant(l, k, m) + g.constant(j, k, l) * g.constant(l, i, m) +
           g.constant(k, i, l) * g.constant(l, j, m);
    if (s != 0) out += s * g.e(m);
  }
  return out;
}

inline bool satisfies_jacobi(const LieStructure& g) {
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j)
      for (int k = j + 1; k < g.dim(); ++k)
        if (!jacobi_defect(g, i, j, k).is_zero()) return false;
  return true;
}

inline Element big_bracket(const LieStructure& g, const Element& a, const Element& b) {
  return g.big()(a, b);
}

// Every term is b_I b'_J with |I| = p, |J| = q.
inline std::optional<std::pair<int, int>> big_bidegree(const LieStructure& g, const Element& a) {
  if (a.context() != g.big_context()) throw ContextMismatch();
  std::optional<std::pair<int, int>> bd;
  for (const auto& [m, c] : a.terms()) {
    int p = 0, q = 0;
    for (int i = 0; i < g.dim(); ++i) p += m[std::size_t(i)], q += m[std::size_t(g.dim() + i)];
    if (bd && *bd != std::pair{p, q}) return std::nullopt;
    bd = std::pair{p, q};
  }
  return bd ? bd : std::pair{0, 0};
}

inline bool in_lambda_e(const LieStructure& g, const Element& a) {
  for (const auto& [m, c] : a.terms())
    for (int i = 0; i < g.dim(); ++i)
      if (m[std::size_t(g.dim() + i)]) return false;
  return true;
}

inline bool in_lambda_dual(const LieStructure& g, const Element& a) {
  for (const auto& [m, c] : a.terms())
    for (int i = 0; i < g.dim(); ++i)
      if (m[std::size_t(i)]) return false;
  return true;
}

// d_mu c = {mu, c} on cochains.
inline Element ce_differential(const LieStructure& g, const Element& c) {
  if (!in_lambda_dual(g, c)) throw GradingError("not a cochain: " + c.to_string());
  return g.big()(g.mu(), c);
}

// [x,y]_mu = {{x,mu},y} on Lambda E.
inline Element algebraic_schouten(const LieStructure& g, const Element& x, const Element& y) {
  if (!in_lambda_e(g, x) || !in_lambda_e(g, y))
    throw GradingError("algebraic Schouten bracket needs elements of Lambda E");
  return g.big()(g.big()(x, g.mu()), y);
}

// Value of a cochain on vectors: c(v1,...,vq) = i_{vq} ... i_{v1} c.
inline Element evaluate_cochain(const LieStructure& g, const Element& c,
                                const std::vector<Element>& vectors) {
  Element out = c;
  for (const auto& v : vectors) out = interior_embedding(v, g.contractions())(out);
  return out;
}

// {f,g}_mu = [[f,mu],g] with the Schouten bracket on E*.
inline Element linear_poisson(const LieStructure& g, const Element& f, const Element& h) {
  if (f.context() != g.linear_context() || h.context() != g.linear_context())
    throw ContextMismatch();
  const auto& S = g.linear_schouten();
  return S(S(f, g.mu_bivector()), h);
}

// i_x on Lambda E* and d_mu as operators.
inline Operator interior_lie(const LieStructure& g, const Element& x) {
  if (!in_lambda_e(g, x)) throw GradingError("interior product needs an element of Lambda E");
  return interior_embedding(x, g.contractions(), "i(" + x.to_string() + ")");
}

// i_X for X in Lambda E* (x) Lambda E, i_{xi (x) x} = e_xi o i_x.
inline Operator interior_lie_tensor(const LieStructure& g, const Element& X) {
  if (X.context() != g.big_context()) throw ContextMismatch();
  return interior_embedding(X, g.contractions(), "i(" + X.to_string() + ")");
}

inline Operator ce_operator(const LieStructure& g) {
  return Operator::derivation(g.ce_derivation(), "d_mu");
}

struct GcybeReport {
  Element rr;        // [r,r]_mu
  Element drinfeld;  // <r,r> = -2 [r,r]_mu
  Element d_rr;      // {mu, [r,r]_mu}
  Element dr;        // d_mu r
  Element dr_dr;     // {d_mu r, d_mu r}
  bool invariant = false;
  bool chain = false;
  bool cobracket = false;
};

inline GcybeReport gcybe_check(const LieStructure& g, const Element& r) {
  auto bd = big_bidegree(g, r);
  if (!r.is_zero() && (!bd || *bd != std::pair{2, 0}))
    throw GradingError("r must lie in Lambda^2 E: " + r.to_string());
  const auto& B = g.big();
  GcybeReport rep;
  rep.rr = B(B(r, g.mu()), r);
  rep.drinfeld = Rational(-2) * rep.rr;
  rep.d_rr = B(g.mu(), rep.rr);
  rep.dr = B(g.mu(), r);
  rep.dr_dr = B(rep.dr, rep.dr);
  rep.invariant = rep.d_rr.is_zero();
  rep.cobracket = rep.dr_dr.is_zero();
  rep.chain = rep.dr_dr == rep.d_rr;
  return rep;
}

// i_{[x,y]_mu} = [[i_x, d_mu], i_y] as operators on Lambda E*.
inline CheckReport check_liealg(const LieStructure& g, const std::vector<std::pair<Element, Element>>& pairs,
                                std::string name = "i_[x,y] = [[i_x,d_mu],i_y]") {
  CheckReport report(std::move(name));
  Operator d = ce_operator(g);
  Carrier car = g.cochains();
  for (const auto& [x, y] : pairs) {
    Operator lhs = interior_lie(g, algebraic_schouten(g, x, y));
    Operator rhs = commutator(commutator(interior_lie(g, x), d), interior_lie(g, y));
    auto w = op_difference_witness(lhs, rhs, car);
    report.record(!w, {x.to_string(), y.to_string()},
                  w ? "differs on " + w->to_string() + ": " + (lhs(*w) - rhs(*w)).to_string() : "0");
  }
  return report;
}

}  // namespace loday
