#pragma once

// Cartan calculus on R^n with polynomial coefficients.
//
// Mixed tensors (multivector-valued forms) live in one algebra with generators
// x1..xn (degree 0), dx1..dxn (degree 1) and @1..@n (degree -1, standing for
// the coordinate vector fields). A monomial f dx^I @^J is xi (x) d_J with
// xi = f dx^I. Operators act on forms, i.e. on the x and dx generators, and
// i_{d_{j1} ^ ... ^ d_{jp}} = i_{d_{j1}} ... i_{d_{jp}} with i_{d_j} the left
// derivative by dx_j.
//
// Multivectors also have a second model as functions on Pi T*M, with odd
// generators xt1..xtn of degree 1 and the canonical odd Poisson bracket of
// degree -1 given by {xt_a, x_b} = delta_ab.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loday/brackets.hpp"
#include "loday/gca.hpp"
#include "loday/operator.hpp"

namespace loday {

class Manifold {
 public:
  explicit Manifold(int n) : n_(n) {
    if (n < 1 || n > 20) throw Error("manifold dimension must be between 1 and 20");
    std::vector<Generator> t, m;
    for (int i = 1; i <= n; ++i) t.push_back({"x" + std::to_string(i), 0});
    for (int i = 1; i <= n; ++i) t.push_back({"dx" + std::to_string(i), 1});
    for (int i = 1; i <= n; ++i) t.push_back({"@" + std::to_string(i), -1});
    for (int i = 1; i <= n; ++i) m.push_back({"x" + std::to_string(i), 0});
    for (int i = 1; i <= n; ++i) m.push_back({"xt" + std::to_string(i), 1});
    tensors_ = Context::make(t);
    pit_ = Context::make(m);

    for (int i = 1; i <= n; ++i) {
      forms_.even.push_back(tensors_->position("x" + std::to_string(i)));
      forms_.odd.push_back(tensors_->position("dx" + std::to_string(i)));
      pit_carrier_.even.push_back(pit_->position("x" + std::to_string(i)));
      pit_carrier_.odd.push_back(pit_->position("xt" + std::to_string(i)));
      contractions_.push_back({del_pos(i), dx_pos(i)});
    }

    Derivation d(tensors_, 1);
    for (int i = 1; i <= n; ++i) {
      d.set(x_pos(i), dx(i));
      d.set(dx_pos(i), Element(tensors_));
      d.set(del_pos(i), Element(tensors_));
    }
    de_rham_ = d;

    schouten_ = BracketStructure(pit_, -1);
    for (int i = 1; i <= n; ++i) schouten_.set(xt_pos(i), pit_x_pos(i), Element(pit_, 1));

    big_ = BracketStructure(tensors_, 0);
    for (int i = 1; i <= n; ++i) big_.set(del_pos(i), dx_pos(i), Element(tensors_, 1));
  }

  int dim() const { return n_; }
  const ContextPtr& tensors() const { return tensors_; }
  const ContextPtr& pit() const { return pit_; }
  const Carrier& forms() const { return forms_; }
  const Carrier& pit_carrier() const { return pit_carrier_; }
  const std::vector<Contraction>& contractions() const { return contractions_; }

  std::size_t x_pos(int i) const { return std::size_t(i - 1); }
  std::size_t dx_pos(int i) const { return std::size_t(n_ + i - 1); }
  std::size_t del_pos(int i) const { return std::size_t(2 * n_ + i - 1); }
  std::size_t pit_x_pos(int i) const { return std::size_t(i - 1); }
  std::size_t xt_pos(int i) const { return std::size_t(n_ + i - 1); }

  Element x(int i) const { return Element::generator(tensors_, x_pos(i)); }
  Element dx(int i) const { return Element::generator(tensors_, dx_pos(i)); }
  Element del(int i) const { return Element::generator(tensors_, del_pos(i)); }
  Element xt(int i) const { return Element::generator(pit_, xt_pos(i)); }
  Element one() const { return Element(tensors_, 1); }

  const Derivation& de_rham() const { return de_rham_; }
  // Odd Poisson bracket of degree -1 on Pi T*M.
  const BracketStructure& schouten_structure() const { return schouten_; }
  // Pointwise big bracket on multivector-valued forms: {@_a, dx_b} = delta_ab.
  const BracketStructure& big_bracket() const { return big_; }

  Operator d() const { return Operator::derivation(de_rham_, "d"); }

  Element to_pit(const Element& u) const {
    check_tensor(u);
    std::vector<std::optional<Element>> images(tensors_->size());
    for (int i = 1; i <= n_; ++i) {
      images[x_pos(i)] = Element::generator(pit_, pit_x_pos(i));
      images[del_pos(i)] = xt(i);
    }
    for (const auto& [m, c] : u.terms())
      for (int i = 1; i <= n_; ++i)
        if (m[dx_pos(i)]) throw GradingError("not a multivector: " + u.to_string());
    return substitute(u, pit_, images);
  }

  Element from_pit(const Element& u) const {
    if (u.context() != pit_) throw ContextMismatch();
    std::vector<std::optional<Element>> images(pit_->size());
    for (int i = 1; i <= n_; ++i) {
      images[pit_x_pos(i)] = x(i);
      images[xt_pos(i)] = del(i);
    }
    return substitute(u, tensors_, images);
  }

  void check_tensor(const Element& u) const {
    if (u.context() != tensors_) throw ContextMismatch();
  }

  // Number of dx and @ factors of every term, if constant.
  std::optional<std::pair<int, int>> bidegree(const Element& u) const {
    check_tensor(u);
    std::optional<std::pair<int, int>> bd;
    for (const auto& [m, c] : u.terms()) {
      int q = 0, p = 0;
      for (int i = 1; i <= n_; ++i) q += m[dx_pos(i)], p += m[del_pos(i)];
      if (bd && *bd != std::pair{q, p}) return std::nullopt;
      bd = std::pair{q, p};
    }
    if (!bd) return std::pair{0, 0};
    return bd;
  }

  std::pair<int, int> require_bidegree(const Element& u, const char* what = "tensor") const {
    auto bd = bidegree(u);
    if (!bd) throw GradingError(std::string(what) + " has mixed bidegree: " + u.to_string());
    return *bd;
  }

  bool is_form(const Element& u) const {
    check_tensor(u);
    for (const auto& [m, c] : u.terms())
      for (int i = 1; i <= n_; ++i)
        if (m[del_pos(i)]) return false;
    return true;
  }

  bool is_multivector(const Element& u) const {
    check_tensor(u);
    for (const auto& [m, c] : u.terms())
      for (int i = 1; i <= n_; ++i)
        if (m[dx_pos(i)]) return false;
    return true;
  }

  // Coefficient of @_i in a vector field.
  Element component(const Element& v, int i) const { return partial(v, del_pos(i)); }

 private:
  int n_;
  ContextPtr tensors_, pit_;
  Carrier forms_, pit_carrier_;
  std::vector<Contraction> contractions_;
  Derivation de_rham_;
  BracketStructure schouten_, big_;
};

// i_X, with i_{xi (x) x} = e_xi o i_x.
inline Operator embed_i(const Manifold& M, const Element& X) {
  M.check_tensor(X);
  return interior_embedding(X, M.contractions(), "i(" + X.to_string() + ")");
}

inline Operator interior(const Manifold& M, const Element& X) { return embed_i(M, X); }

inline Operator exterior(const Manifold& M, const Element& xi) {
  if (!M.is_form(xi)) throw GradingError("exterior multiplication needs a form: " + xi.to_string());
  return Operator::multiply(xi, "e(" + xi.to_string() + ")");
}

inline Element apply_d(const Manifold& M, const Element& a) { return M.de_rham()(a); }

// i_X applied to a form.
inline Element contract(const Manifold& M, const Element& X, const Element& form) {
  return embed_i(M, X)(form);
}

// L_X = [i_X, d].
inline Operator lie_derivative(const Manifold& M, const Element& X) {
  return commutator(embed_i(M, X), M.d());
}

// Lie derivative along a vector field as a derivation of the whole tensor algebra.
inline Derivation lie_derivation(const Manifold& M, const Element& v) {
  auto bd = M.require_bidegree(v, "vector field");
  if (!v.is_zero() && bd != std::pair{0, 1})
    throw GradingError("not a vector field: " + v.to_string());
  const auto& T = M.tensors();
  Derivation L(T, 0);
  const int n = M.dim();
  for (int j = 1; j <= n; ++j) {
    Element vj = M.component(v, j);
    L.set(M.x_pos(j), vj);
    L.set(M.dx_pos(j), apply_d(M, vj));
    Element img(T);
    for (int i = 1; i <= n; ++i) img -= partial(M.component(v, i), M.x_pos(j)) * M.del(i);
    L.set(M.del_pos(j), img);
  }
  return L;
}

// i_xi on multivectors for a form xi, i_{f dx^K} = f d/d@_{k1} ... d/d@_{kp}.
inline Operator form_interior(const Manifold& M, const Element& xi) {
  if (!M.is_form(xi)) throw GradingError("not a form: " + xi.to_string());
  std::vector<Contraction> dual;
  for (int i = 1; i <= M.dim(); ++i) dual.push_back({M.dx_pos(i), M.del_pos(i)});
  return interior_embedding(xi, dual, "i(" + xi.to_string() + ")");
}

// P#xi = i_xi P.
inline Element sharp(const Manifold& M, const Element& P, const Element& xi) {
  if (!M.is_multivector(P)) throw GradingError("not a multivector: " + P.to_string());
  return form_interior(M, xi)(P);
}

// W(xi_1, ..., xi_k) = i_{xi_k} ... i_{xi_1} W.
inline Element evaluate_multivector(const Manifold& M, const Element& W,
                                    const std::vector<Element>& forms) {
  Element out = W;
  for (const auto& f : forms) out = form_interior(M, f)(out);
  return out;
}

// psi(u_1, ..., u_k) = i_{u_k} ... i_{u_1} psi.
inline Element evaluate_form(const Manifold& M, const Element& psi,
                             const std::vector<Element>& vectors) {
  Element out = psi;
  for (const auto& v : vectors) out = contract(M, v, out);
  return out;
}

// Directional derivative v(f) of a function.
inline Element apply_vector(const Manifold& M, const Element& v, const Element& f) {
  Element out(M.tensors());
  for (int j = 1; j <= M.dim(); ++j) out += M.component(v, j) * partial(f, M.x_pos(j));
  return out;
}

// Lie bracket of vector fields by differentiation of components.
inline Element lie_bracket(const Manifold& M, const Element& u, const Element& v) {
  Element out(M.tensors());
  for (int i = 1; i <= M.dim(); ++i)
    out += (apply_vector(M, u, M.component(v, i)) - apply_vector(M, v, M.component(u, i))) *
           M.del(i);
  return out;
}

// Writes an operator linear over functions as a multivector-valued form,
// the inverse of embed_i.
inline Element extract_tensor(const Manifold& M, const Operator& op) {
  auto xi = decompose_algebraic(op, M.forms().odd, M.forms());
  return interior_tensor(xi, M.tensors(), M.contractions());
}

// Components of op by type (number of contractions).
inline std::map<int, Element> type_decomposition(const Manifold& M, const Operator& op) {
  auto xi = decompose_algebraic(op, M.forms().odd, M.forms());
  std::map<int, std::map<OddSet, Element>> by_type;
  for (auto& [k, w] : xi) by_type[std::popcount(k)].emplace(k, w);
  std::map<int, Element> out;
  for (auto& [t, part] : by_type) out.emplace(t, interior_tensor(part, M.tensors(), M.contractions()));
  return out;
}

inline Element schouten_via_pit(const Manifold& M, const Element& u, const Element& v) {
  return M.from_pit(M.schouten_structure()(M.to_pit(u), M.to_pit(v)));
}

// Schouten-Nijenhuis bracket from i_{[u,v]} = [[i_u,d],i_v], cross-checked with
// the Pi T*M model.
inline Element schouten(const Manifold& M, const Element& u, const Element& v) {
  if (!M.is_multivector(u) || !M.is_multivector(v))
    throw GradingError("schouten bracket needs multivectors");
  M.require_bidegree(u, "multivector");
  M.require_bidegree(v, "multivector");
  Operator op = commutator(lie_derivative(M, u), embed_i(M, v));
  Element w;
  try {
    w = extract_tensor(M, op);
  } catch (const UnsupportedShape& e) {
    throw InternalInconsistency(std::string("[[i_u,d],i_v] is not an interior product: ") +
                                e.what());
  }
  if (!M.is_multivector(w))
    throw InternalInconsistency("[[i_u,d],i_v] has a form part: " + w.to_string());
  Element check = schouten_via_pit(M, u, v);
  if (!(check == w))
    throw InternalInconsistency("operator and Pi T*M Schouten brackets differ: " + w.to_string() +
                                " vs " + check.to_string());
  return w;
}

// Splits a vector-valued form into terms xi (x) d_j.
inline std::vector<std::pair<Element, int>> split_vector_valued(const Manifold& M,
                                                               const Element& X) {
  std::vector<std::pair<Element, int>> out;
  for (int j = 1; j <= M.dim(); ++j) {
    // X = sum_j xi_j @_j with xi_j a form; the right partial by @_j is the left
    // partial up to the parity of the form part, which is fixed per term.
    Element xi(M.tensors());
    for (const auto& [m, c] : X.terms()) {
      if (!m[M.del_pos(j)]) continue;
      Monomial r = m;
      r[M.del_pos(j)] = 0;
      xi.add_term(r, c);
    }
    if (!xi.is_zero()) out.emplace_back(std::move(xi), j);
  }
  return out;
}

// Froelicher-Nijenhuis bracket of vector-valued forms, term by term:
// [xi(x)x, eta(x)y] = xi^eta (x) [x,y]
//   + (xi ^ L_x eta + (-1)^{|xi|} d xi ^ i_x eta) (x) y
//   - (-1)^{|xi||eta|} (eta ^ L_y xi + (-1)^{|eta|} d eta ^ i_y xi) (x) x
inline Element frolicher_nijenhuis(const Manifold& M, const Element& X, const Element& Y) {
  for (const auto* Z : {&X, &Y})
    for (const auto& [m, c] : Z->terms()) {
      int p = 0;
      for (int i = 1; i <= M.dim(); ++i) p += m[M.del_pos(i)];
      if (p != 1) throw GradingError("not a vector-valued form: " + Z->to_string());
    }
  Element out(M.tensors());
  for (const auto& [xi, i] : split_vector_valued(M, X))
    for (const auto& [eta, j] : split_vector_valued(M, Y)) {
      // split by form degree so that signs are well defined
      for (const auto& [mxi, cxi] : xi.terms())
        for (const auto& [meta, ceta] : eta.terms()) {
          Element a = Element::monomial(M.tensors(), mxi, cxi);
          Element b = Element::monomial(M.tensors(), meta, ceta);
          long qa = require_degree(a), qb = require_degree(b);
          Element vx = M.del(i), vy = M.del(j);
          Derivation Lx = lie_derivation(M, vx), Ly = lie_derivation(M, vy);
          Element t1 = a * b * lie_bracket(M, vx, vy);
          Element t2 = (a * Lx(b) + Rational(sign_of(qa)) * apply_d(M, a) * contract(M, vx, b)) * vy;
          Element t3 = (b * Ly(a) + Rational(sign_of(qb)) * apply_d(M, b) * contract(M, vy, a)) * vx;
          out += t1 + t2 - Rational(sign_of(qa * qb)) * t3;
        }
    }
  return out;
}

// i_Y X: Y acting algebraically on the form part of X.
inline Element insert(const Manifold& M, const Element& Y, const Element& X) {
  Operator iY = embed_i(M, Y);
  Element out(M.tensors());
  for (const auto& [xi, j] : split_vector_valued(M, X)) out += iY(xi) * M.del(j);
  for (const auto& [m, c] : X.terms()) {
    int p = 0;
    for (int i = 1; i <= M.dim(); ++i) p += m[M.del_pos(i)];
    if (p != 1) throw GradingError("insertion is defined into vector-valued forms");
  }
  return out;
}

// [[a,d],b]
inline Operator derived_op_bracket(const Manifold& M, const Operator& a, const Operator& b) {
  return commutator(commutator(a, M.d()), b);
}

// 1/2 ([[a,d],b] - (-1)^{|b|} [a,[b,d]])
inline Operator vinogradov(const Manifold& M, const Operator& a, const Operator& b) {
  Rational s = b.require_parity() == Parity::odd ? Rational(1, 2) : Rational(-1, 2);
  return Rational(1, 2) * derived_op_bracket(M, a, b) + s * commutator(a, commutator(b, M.d()));
}

// A section x + xi of TM + Lambda T*M.
struct GeneralizedVector {
  Element vector;
  Element form;
};

inline bool operator==(const GeneralizedVector& a, const GeneralizedVector& b) {
  return a.vector == b.vector && a.form == b.form;
}

inline std::string to_string(const GeneralizedVector& g) {
  return "(" + g.vector.to_string() + ", " + g.form.to_string() + ")";
}

inline void check_generalized(const Manifold& M, const GeneralizedVector& g) {
  auto bd = M.require_bidegree(g.vector, "vector part");
  if (!g.vector.is_zero() && bd != std::pair{0, 1})
    throw GradingError("vector part is not a vector field: " + g.vector.to_string());
  if (!M.is_form(g.form)) throw GradingError("form part is not a form: " + g.form.to_string());
}

// [x+xi, y+eta]_d = [x,y] + L_x eta - i_y d xi
inline GeneralizedVector dorfman(const Manifold& M, const GeneralizedVector& a,
                                 const GeneralizedVector& b) {
  check_generalized(M, a);
  check_generalized(M, b);
  Element form = lie_derivation(M, a.vector)(b.form) - contract(M, b.vector, apply_d(M, a.form));
  return {lie_bracket(M, a.vector, b.vector), form};
}

// [x,y] + L_x eta - L_y xi - 1/2 d(i_x eta - i_y xi)
inline GeneralizedVector courant(const Manifold& M, const GeneralizedVector& a,
                                 const GeneralizedVector& b) {
  check_generalized(M, a);
  check_generalized(M, b);
  Element form = lie_derivation(M, a.vector)(b.form) - lie_derivation(M, b.vector)(a.form) -
                 Rational(1, 2) * apply_d(M, contract(M, a.vector, b.form) -
                                            contract(M, b.vector, a.form));
  return {lie_bracket(M, a.vector, b.vector), form};
}

// i_x + e_xi split into Z-homogeneous operators.
inline std::vector<Operator> embed_generalized(const Manifold& M, const GeneralizedVector& g) {
  check_generalized(M, g);
  std::vector<Operator> out;
  if (!g.vector.is_zero()) out.push_back(embed_i(M, g.vector));
  std::map<long, Element> by_degree;
  for (const auto& [m, c] : g.form.terms()) {
    long q = m.degree(*M.tensors());
    by_degree.try_emplace(q, M.tensors()).first->second.add_term(m, c);
  }
  for (auto& [q, f] : by_degree) out.push_back(exterior(M, f));
  return out;
}

inline Operator embed_sum(const Manifold& M, const GeneralizedVector& g) {
  auto parts = embed_generalized(M, g);
  Operator out = Operator::zero(M.tensors());
  for (const auto& p : parts) out = out + p;
  return out;
}

// Bilinear extension of a bracket of operators over homogeneous pieces.
template <class Bracket>
Operator bilinear(const Manifold& M, const std::vector<Operator>& a, const std::vector<Operator>& b,
                  const Bracket& br) {
  std::vector<std::pair<Rational, Operator>> terms;
  for (const auto& u : a)
    for (const auto& v : b) terms.emplace_back(Rational(1), br(u, v));
  if (terms.empty()) return Operator::zero(M.tensors());
  return Operator::linear_combination(std::move(terms));
}

// The part of [i_X, i_Y] of highest possible type p + p' - 1, as a tensor.
inline Element highest_type_term(const Manifold& M, const Element& X, const Element& Y) {
  auto bx = M.bidegree(X), by = M.bidegree(Y);
  if (!bx || !by) throw UnsupportedShape("highest type needs tensors of fixed bidegree");
  int t = bx->second + by->second - 1;
  if (t < 0) return Element(M.tensors());
  auto parts = type_decomposition(M, commutator(embed_i(M, X), embed_i(M, Y)));
  auto it = parts.find(t);
  return it == parts.end() ? Element(M.tensors()) : it->second;
}

// Functions on T*(Pi T*R^n) with coordinates y^i (0), yt_i (1), p_i (2),
// pt^i (1), the canonical even bracket {y^i,p_j} = {yt_i,pt^j} = delta of
// degree -2 and the quadratic hamiltonian S = -p_i pt^i.
class SuperCotangent {
 public:
  explicit SuperCotangent(const Manifold& M) : M_(M) {
    const int n = M.dim();
    std::vector<Generator> gens;
    for (int i = 1; i <= n; ++i) gens.push_back({"y" + std::to_string(i), 0});
    for (int i = 1; i <= n; ++i) gens.push_back({"yt" + std::to_string(i), 1});
    for (int i = 1; i <= n; ++i) gens.push_back({"p" + std::to_string(i), 2});
    for (int i = 1; i <= n; ++i) gens.push_back({"pt" + std::to_string(i), 1});
    ctx_ = Context::make(gens);
    canonical_ = BracketStructure(ctx_, -2);
    S_ = Element(ctx_);
    for (int i = 1; i <= n; ++i) {
      canonical_.set(pos("y", i), pos("p", i), Element(ctx_, 1));
      canonical_.set(pos("yt", i), pos("pt", i), Element(ctx_, 1));
      S_ -= gen("p", i) * gen("pt", i);
    }
  }

  const ContextPtr& context() const { return ctx_; }
  const BracketStructure& canonical() const { return canonical_; }
  const Element& S() const { return S_; }
  Element gen(const std::string& base, int i) const { return Element::generator(ctx_, pos(base, i)); }

  // Multivector fields as functions of (y, yt), with d_i -> yt_i.
  Element lift(const Element& u) const {
    Element v = M_.to_pit(u);
    std::vector<std::optional<Element>> images(M_.pit()->size());
    for (int i = 1; i <= M_.dim(); ++i) {
      images[M_.pit_x_pos(i)] = gen("y", i);
      images[M_.xt_pos(i)] = gen("yt", i);
    }
    return substitute(v, ctx_, images);
  }

  Element lower(const Element& f) const {
    std::vector<std::optional<Element>> images(ctx_->size());
    for (int i = 1; i <= M_.dim(); ++i) {
      images[pos("y", i)] = M_.x(i);
      images[pos("yt", i)] = M_.del(i);
    }
    for (const auto& [m, c] : f.terms())
      for (int i = 1; i <= M_.dim(); ++i)
        if (m[pos("p", i)] || m[pos("pt", i)])
          throw GradingError("not a function on Pi T*M: " + f.to_string());
    return substitute(f, M_.tensors(), images);
  }

  // {{f,S},g}
  Element derived(const Element& f, const Element& g) const {
    return canonical_(canonical_(f, S_), g);
  }

 private:
  std::size_t pos(const std::string& base, int i) const { return ctx_->position(base + std::to_string(i)); }

  Manifold M_;
  ContextPtr ctx_;
  BracketStructure canonical_;
  Element S_;
};

// [[i_X,d],[i_Y,d]]
inline Operator buttin_rhs(const Manifold& M, const Element& X, const Element& Y) {
  return commutator(lie_derivative(M, X), lie_derivative(M, Y));
}

}  // namespace loday
