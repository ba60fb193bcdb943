#pragma once

// Lie algebroids over a polynomial base in local coordinates.
//
// For base coordinates c (x^alpha) and frame names f (e_i) all coordinate models
// share one context:
//   c        x^alpha     degree 0
//   p.c      p_alpha     degree 2
//   y.f      eta_i       degree 0   (linear coordinates on A*)
//   f        eta~_i      degree 1   (Pi A*, sections of Lambda A)
//   f'       y~^i        degree 1   (Pi A, sections of Lambda A*)
//   th.f     theta~^i    degree 1
//   xt.c     xi_alpha    degree 1   (Pi T* of the base)
//   yt.f     zeta^i      degree 1
// The big bracket has degree -2 with {eta~_i, theta~^i} = 1 and
// {p_alpha, x^alpha} = 1; the Schouten bracket has degree -1 with
// {xi_alpha, x^alpha} = 1 and {zeta^i, eta_i} = 1.

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "loday/brackets.hpp"
#include "loday/cartan.hpp"
#include "loday/gca.hpp"
#include "loday/operator.hpp"
#include "loday/random.hpp"
#include "loday/report.hpp"

namespace loday {

// a_i^alpha keyed by (i, alpha) and C^k_ij keyed by (i, j, k), zero based.
// Polynomials may live in any context whose generators are named like the base
// coordinates.
using AnchorTable = std::map<std::pair<int, int>, Element>;
using StructureFunctions = std::map<std::tuple<int, int, int>, Element>;

class Algebroid {
 public:
  Algebroid(std::vector<std::string> coords, std::vector<std::string> frame, const AnchorTable& anchor,
            const StructureFunctions& structure, bool checked = true)
      : coords_(std::move(coords)), frame_(std::move(frame)) {
    const int m = base_dim(), r = rank();
    if (r < 1) throw Error("an algebroid needs a frame");
    std::vector<Generator> g;
    for (const auto& c : coords_) g.push_back({c, 0});
    for (const auto& c : coords_) g.push_back({"p." + c, 2});
    for (const auto& f : frame_) g.push_back({"y." + f, 0});
    for (const auto& f : frame_) g.push_back({f, 1});
    for (const auto& f : frame_) g.push_back({f + "'", 1});
    for (const auto& f : frame_) g.push_back({"th." + f, 1});
    for (const auto& c : coords_) g.push_back({"xt." + c, 1});
    for (const auto& f : frame_) g.push_back({"yt." + f, 1});
    ctx_ = Context::make(g);

    a_.assign(std::size_t(r * m), Element(ctx_));
    C_.assign(std::size_t(r * r * r), Element(ctx_));
    for (const auto& [key, v] : anchor) {
      auto [i, al] = key;
      if (i < 0 || i >= r || al < 0 || al >= m) throw Error("anchor index out of range");
      anc(i, al) = import(v);
    }
    for (const auto& [key, v] : structure) {
      auto [i, j, k] = key;
      if (i < 0 || j < 0 || k < 0 || i >= r || j >= r || k >= r)
        throw Error("structure function index out of range");
      Element c = import(v);
      if (i == j) {
        if (!c.is_zero()) throw Error("structure functions must be antisymmetric");
        continue;
      }
      Element& x = str(i, j, k);
      Element& y = str(j, i, k);
      if ((!x.is_zero() && !(x == c)) || (!y.is_zero() && !(y == -c)))
        throw Error("inconsistent structure functions for (" + frame_[std::size_t(i)] + ", " +
                    frame_[std::size_t(j)] + ")");
      x = c;
      y = -c;
    }

    big_ = BracketStructure(ctx_, -2);
    schouten_ = BracketStructure(ctx_, -1);
    for (int al = 0; al < m; ++al) {
      big_.set(p_pos(al), x_pos(al), Element(ctx_, 1));
      schouten_.set(xt_pos(al), x_pos(al), Element(ctx_, 1));
    }
    for (int i = 0; i < r; ++i) {
      big_.set(sec_pos(i), th_pos(i), Element(ctx_, 1));
      schouten_.set(yt_pos(i), y_pos(i), Element(ctx_, 1));
    }

    H_ = Element(ctx_);
    P_ = Element(ctx_);
    Q_ = Derivation(ctx_, 1);
    for (std::size_t k = 0; k < ctx_->size(); ++k) Q_.set(k, Element(ctx_));
    std::vector<Element> qx(std::size_t(m), Element{ctx_}), qy(std::size_t(r), Element{ctx_});
    for (int i = 0; i < r; ++i)
      for (int al = 0; al < m; ++al) {
        const Element& a = anchor_component(i, al);
        if (a.is_zero()) continue;
        H_ += a * gen(p_pos(al)) * gen(th_pos(i));
        P_ += a * gen(xt_pos(al)) * gen(yt_pos(i));
        qx[std::size_t(al)] += gen(dual_pos(i)) * a;
      }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
          const Element& c = structure_function(i, j, k);
          if (c.is_zero()) continue;
          Rational h(1, 2);
          H_ += h * (gen(sec_pos(k)) * c * gen(th_pos(j)) * gen(th_pos(i)));
          P_ += h * (gen(y_pos(k)) * c * gen(yt_pos(j)) * gen(yt_pos(i)));
          qy[std::size_t(k)] += h * (gen(dual_pos(j)) * gen(dual_pos(i)) * c);
        }
    for (int al = 0; al < m; ++al) Q_.set(x_pos(al), qx[std::size_t(al)]);
    for (int k = 0; k < r; ++k) Q_.set(dual_pos(k), qy[std::size_t(k)]);

    hh_ = big_(H_, H_);
    pp_ = schouten_(P_, P_);
    for (int al = 0; al < m; ++al) {
      Element s = Q_(Q_(gen(x_pos(al))));
      if (!s.is_zero()) qq_.emplace_back(coords_[std::size_t(al)], s);
    }
    for (int k = 0; k < r; ++k) {
      Element s = Q_(Q_(gen(dual_pos(k))));
      if (!s.is_zero()) qq_.emplace_back(frame_[std::size_t(k)] + "'", s);
    }
    if (checked && !hh_.is_zero()) throw NotAlgebroid("{H,H} != 0", hh_.to_string());
  }

  int base_dim() const { return int(coords_.size()); }
  int rank() const { return int(frame_.size()); }
  const std::vector<std::string>& coordinates() const { return coords_; }
  const std::vector<std::string>& frame() const { return frame_; }
  const ContextPtr& context() const { return ctx_; }

  std::size_t x_pos(int al) const { return std::size_t(al); }
  std::size_t p_pos(int al) const { return std::size_t(base_dim() + al); }
  std::size_t y_pos(int i) const { return std::size_t(2 * base_dim() + i); }
  std::size_t sec_pos(int i) const { return std::size_t(2 * base_dim() + rank() + i); }
  std::size_t dual_pos(int i) const { return std::size_t(2 * base_dim() + 2 * rank() + i); }
  std::size_t th_pos(int i) const { return std::size_t(2 * base_dim() + 3 * rank() + i); }
  std::size_t xt_pos(int al) const { return std::size_t(2 * base_dim() + 4 * rank() + al); }
  std::size_t yt_pos(int i) const { return std::size_t(3 * base_dim() + 4 * rank() + i); }

  Element gen(std::size_t pos) const { return Element::generator(ctx_, pos); }
  Element x(int al) const { return gen(x_pos(al)); }
  Element section(int i) const { return gen(sec_pos(i)); }
  Element dual(int i) const { return gen(dual_pos(i)); }
  Element fiber(int i) const { return gen(y_pos(i)); }
  Element one() const { return Element(ctx_, 1); }

  const Element& anchor_component(int i, int al) const {
    return a_[std::size_t(i * base_dim() + al)];
  }
  const Element& structure_function(int i, int j, int k) const {
    return C_[std::size_t((i * rank() + j) * rank() + k)];
  }

  const BracketStructure& big() const { return big_; }
  const BracketStructure& schouten() const { return schouten_; }
  const Element& H() const { return H_; }
  const Element& P() const { return P_; }
  const Derivation& Q() const { return Q_; }
  Operator d() const { return Operator::derivation(Q_, "d_A"); }

  // Obstructions: {H,H}, [P,P] and Q^2 on the generators it does not kill.
  const Element& hh() const { return hh_; }
  const Element& pp() const { return pp_; }
  const std::vector<std::pair<std::string, Element>>& qq() const { return qq_; }
  bool valid() const { return hh_.is_zero(); }

  // Gamma(Lambda A*) as the operators' carrier: functions of x and y~.
  Carrier forms() const {
    Carrier c;
    for (int al = 0; al < base_dim(); ++al) c.even.push_back(x_pos(al));
    for (int i = 0; i < rank(); ++i) c.odd.push_back(dual_pos(i));
    return c;
  }

  std::vector<Contraction> contractions() const {
    std::vector<Contraction> out;
    for (int i = 0; i < rank(); ++i) out.push_back({sec_pos(i), dual_pos(i)});
    return out;
  }

  Element import(const Element& v) const {
    if (v.context() == ctx_) {
      check_function(v);
      return v;
    }
    const auto& src = *v.context();
    for (const auto& [mon, c] : v.terms())
      for (std::size_t g = 0; g < mon.size(); ++g)
        if (mon[g] && std::find(coords_.begin(), coords_.end(), src.generator(g).name) == coords_.end())
          throw GradingError("coefficient uses '" + src.generator(g).name +
                             "', which is not a base coordinate");
    return transport(v, ctx_);
  }

  void check_function(const Element& f) const {
    for (const auto& [mon, c] : f.terms())
      for (std::size_t g = 0; g < mon.size(); ++g)
        if (mon[g] && g >= std::size_t(base_dim()))
          throw GradingError("not a function on the base: " + f.to_string());
  }

  // Components u^i of a section u = u^i e_i.
  std::vector<Element> components(const Element& u) const {
    for (const auto& [mon, c] : u.terms()) {
      int k = 0;
      for (std::size_t g = 0; g < mon.size(); ++g) {
        bool frame = g >= sec_pos(0) && g < sec_pos(0) + std::size_t(rank());
        if (frame) k += mon[g];
        else if (mon[g] && g >= std::size_t(base_dim()))
          throw GradingError("not a section of A: " + u.to_string());
      }
      if (k != 1) throw GradingError("not a section of A: " + u.to_string());
    }
    std::vector<Element> out;
    for (int i = 0; i < rank(); ++i) out.push_back(partial(u, sec_pos(i)));
    return out;
  }

  // rho(u) f = u^i a_i^alpha d f / d x^alpha.
  Element anchor(const Element& u, const Element& f) const {
    check_function(f);
    auto ui = components(u);
    Element out(ctx_);
    for (int i = 0; i < rank(); ++i)
      for (int al = 0; al < base_dim(); ++al)
        out += ui[std::size_t(i)] * anchor_component(i, al) * partial(f, x_pos(al));
    return out;
  }

  // [u,v] = u^i v^j C^k_ij e_k + rho(u)(v^j) e_j - rho(v)(u^i) e_i.
  Element direct_bracket(const Element& u, const Element& v) const {
    auto ui = components(u), vj = components(v);
    Element out(ctx_);
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        for (int k = 0; k < rank(); ++k)
          out += ui[std::size_t(i)] * vj[std::size_t(j)] * structure_function(i, j, k) * section(k);
    for (int j = 0; j < rank(); ++j)
      out += anchor(u, vj[std::size_t(j)]) * section(j) - anchor(v, ui[std::size_t(j)]) * section(j);
    return out;
  }

  // Linear Poisson structure on A*: {eta_i, eta_j} = C^k_ij eta_k,
  // {eta_i, f} = rho(e_i) f, {f, g} = 0, extended as a biderivation.
  Element direct_poisson(const Element& phi, const Element& psi) const {
    for (const auto* e : {&phi, &psi})
      for (const auto& [mon, c] : e->terms())
        for (std::size_t g = 0; g < mon.size(); ++g)
          if (mon[g] && g >= std::size_t(base_dim()) &&
              !(g >= y_pos(0) && g < y_pos(0) + std::size_t(rank())))
            throw GradingError("not a function on A*: " + e->to_string());
    Element out(ctx_);
    for (int i = 0; i < rank(); ++i) {
      Element pi = partial(phi, y_pos(i)), si = partial(psi, y_pos(i));
      for (int j = 0; j < rank(); ++j) {
        Element sj = partial(psi, y_pos(j));
        for (int k = 0; k < rank(); ++k)
          out += pi * sj * structure_function(i, j, k) * fiber(k);
      }
      for (int al = 0; al < base_dim(); ++al) {
        const Element& a = anchor_component(i, al);
        out += pi * a * partial(psi, x_pos(al)) - si * a * partial(phi, x_pos(al));
      }
    }
    return out;
  }

  // [u,v]_A = {{u,H},v} on Gamma(Lambda A).
  Element hamiltonian_bracket(const Element& u, const Element& v) const {
    return big_(big_(u, H_), v);
  }

  // {phi,psi}_A = [[phi,P],psi] on functions on A*.
  Element poisson_bracket(const Element& phi, const Element& psi) const {
    return schouten_(schouten_(phi, P_), psi);
  }

  // i_u on Gamma(Lambda A*) for u in Gamma(Lambda A) or Gamma(Lambda A* (x) Lambda A).
  Operator interior(const Element& u) const {
    if (u.context() != ctx_) throw ContextMismatch();
    return interior_embedding(u, contractions(), "i(" + u.to_string() + ")");
  }

  Operator lie_derivative(const Element& u) const { return commutator(interior(u), d()); }

 private:
  Element& anc(int i, int al) { return a_[std::size_t(i * base_dim() + al)]; }
  Element& str(int i, int j, int k) { return C_[std::size_t((i * rank() + j) * rank() + k)]; }

  std::vector<std::string> coords_, frame_;
  ContextPtr ctx_;
  std::vector<Element> a_, C_;
  BracketStructure big_, schouten_;
  Element H_, P_, hh_, pp_;
  Derivation Q_;
  std::vector<std::pair<std::string, Element>> qq_;
};

// Tangent algebroid of R^n: frame e1..en, anchor the identity, C = 0.
inline Algebroid tangent_algebroid(int n, const std::string& frame_prefix = "e") {
  std::vector<std::string> coords, frame;
  for (int i = 1; i <= n; ++i) coords.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) frame.push_back(frame_prefix + std::to_string(i));
  auto base = Context::make({{"one", 0}});
  AnchorTable a;
  for (int i = 0; i < n; ++i) a.emplace(std::pair{i, i}, Element(base, 1));
  return Algebroid(coords, frame, a, {});
}

// A Lie algebra as an algebroid over a point.
inline Algebroid point_algebroid(const std::vector<std::string>& basis,
                                 const std::map<std::tuple<int, int, int>, Rational>& constants) {
  auto base = Context::make({{"one", 0}});
  StructureFunctions C;
  for (const auto& [k, c] : constants) C.emplace(k, Element(base, c));
  return Algebroid({}, basis, {}, C);
}

// Random sections of Lambda^k A with coefficients of degree <= max_degree.
inline Element random_multisection(const Algebroid& A, Random& rng, int k, unsigned max_degree,
                                   unsigned terms = 2) {
  std::vector<std::size_t> ev, fr;
  for (int al = 0; al < A.base_dim(); ++al) ev.push_back(A.x_pos(al));
  for (int i = 0; i < A.rank(); ++i) fr.push_back(A.sec_pos(i));
  return rng.combination(A.context(), ev, max_degree, {{fr, std::size_t(k)}}, terms);
}

inline Element random_base_function(const Algebroid& A, Random& rng, unsigned max_degree,
                                    unsigned terms = 3) {
  std::vector<std::size_t> ev;
  for (int al = 0; al < A.base_dim(); ++al) ev.push_back(A.x_pos(al));
  return rng.combination(A.context(), ev, max_degree, {}, terms);
}

inline Element random_dual_function(const Algebroid& A, Random& rng, unsigned max_degree,
                                    unsigned terms = 3) {
  std::vector<std::size_t> ev;
  for (int al = 0; al < A.base_dim(); ++al) ev.push_back(A.x_pos(al));
  for (int i = 0; i < A.rank(); ++i) ev.push_back(A.y_pos(i));
  return rng.combination(A.context(), ev, max_degree, {}, terms);
}

inline std::string witness_text(const Operator& lhs, const Operator& rhs, const Carrier& car) {
  auto w = op_difference_witness(lhs, rhs, car);
  if (!w) return {};
  return "on " + w->to_string() + ": " + (lhs(*w) - rhs(*w)).to_string();
}

// The derived-bracket descriptions of an algebroid against the structure
// functions: {{u,H},v} for sections, [[phi,P],psi] on A*, i_{[u,v]} =
// [[i_u,d_A],i_v] on Gamma(Lambda A*), and the anchor as {{u,H},f} and as
// [[i_u,d_A],e_f] = e_{rho(u)f}. Samples: all generators plus `random_samples`
// random combinations of total degree <= 3.
inline std::vector<CheckReport> verify_derived_identities(const Algebroid& A, std::uint64_t seed,
                                                          int random_samples = 20) {
  Random rng(seed);
  std::vector<Element> sections, functions{A.one()}, dual_functions, multi;
  for (int i = 0; i < A.rank(); ++i) sections.push_back(A.section(i));
  for (int al = 0; al < A.base_dim(); ++al) functions.push_back(A.x(al));
  for (int al = 0; al < A.base_dim(); ++al) dual_functions.push_back(A.x(al));
  for (int i = 0; i < A.rank(); ++i) dual_functions.push_back(A.fiber(i));
  for (int t = 0; t < random_samples; ++t) {
    sections.push_back(random_multisection(A, rng, 1, 2));
    if (A.base_dim() > 0) functions.push_back(random_base_function(A, rng, 3));
    dual_functions.push_back(random_dual_function(A, rng, 3));
    multi.push_back(random_multisection(A, rng, rng.integer(1, std::min(2, A.rank())), 1));
  }
  const auto car = A.forms();

  CheckReport ham("[u,v]_A = {{u,H},v}");
  for (const auto& u : sections)
    for (const auto& v : sections) {
      Element r = A.hamiltonian_bracket(u, v) - A.direct_bracket(u, v);
      ham.record(r.is_zero(), {u.to_string(), v.to_string()}, r.to_string());
    }

  CheckReport biv("{phi,psi}_A = [[phi,P],psi]");
  for (const auto& f : dual_functions)
    for (const auto& g : dual_functions) {
      Element r = A.poisson_bracket(f, g) - A.direct_poisson(f, g);
      biv.record(r.is_zero(), {f.to_string(), g.to_string()}, r.to_string());
    }

  CheckReport end("i_[u,v]_A = [[i_u,d_A],i_v]");
  std::vector<Element> ends = sections;
  ends.insert(ends.end(), multi.begin(), multi.end());
  for (std::size_t a = 0; a < ends.size(); ++a)
    for (std::size_t b = 0; b < ends.size(); b += 1 + (a % 3)) {
      const auto &u = ends[a], &v = ends[b];
      Operator lhs = A.interior(A.hamiltonian_bracket(u, v));
      Operator rhs = commutator(commutator(A.interior(u), A.d()), A.interior(v));
      auto w = witness_text(lhs, rhs, car);
      end.record(w.empty(), {u.to_string(), v.to_string()}, w);
    }

  CheckReport anc("[u,f]_A = rho(u) f");
  for (const auto& u : sections)
    for (const auto& f : functions) {
      Element rho = A.anchor(u, f);
      Element r = A.hamiltonian_bracket(u, f) - rho;
      anc.record(r.is_zero(), {u.to_string(), f.to_string()}, "{{u,H},f}: " + r.to_string());
      Operator lhs = commutator(commutator(A.interior(u), A.d()), Operator::multiply(f));
      auto w = witness_text(lhs, Operator::multiply(rho), car);
      anc.record(w.empty(), {u.to_string(), f.to_string()}, "[[i_u,d_A],e_f]: " + w);
    }
  return {ham, biv, end, anc};
}

// rho[u,v] = [rho u, rho v] on functions.
inline CheckReport check_anchor_morphism(const Algebroid& A,
                                         const std::vector<std::pair<Element, Element>>& pairs,
                                         const std::vector<Element>& functions) {
  CheckReport report("rho[u,v] = [rho u, rho v]");
  for (const auto& [u, v] : pairs)
    for (const auto& f : functions) {
      Element r = A.anchor(A.direct_bracket(u, v), f) - A.anchor(u, A.anchor(v, f)) +
                  A.anchor(v, A.anchor(u, f));
      report.record(r.is_zero(), {u.to_string(), v.to_string(), f.to_string()}, r.to_string());
    }
  return report;
}

// [u, f v]_A = f [u,v]_A + (rho(u) f) v with the derived bracket.
inline CheckReport check_leibniz(const Algebroid& A,
                                 const std::vector<std::tuple<Element, Element, Element>>& triples) {
  CheckReport report("[u,fv] = f[u,v] + rho(u)(f) v");
  for (const auto& [u, f, v] : triples) {
    Element r = A.hamiltonian_bracket(u, f * v) - f * A.hamiltonian_bracket(u, v) -
                A.anchor(u, f) * v;
    report.record(r.is_zero(), {u.to_string(), f.to_string(), v.to_string()}, r.to_string());
  }
  return report;
}

// Vector-valued algebroid form X = sum_j xi_j (x) e_j with xi_j in Gamma(Lambda A*).
inline std::vector<std::pair<Element, int>> split_algebroid_form(const Algebroid& A, const Element& X) {
  std::vector<std::pair<Element, int>> out;
  for (int j = 0; j < A.rank(); ++j) {
    // right partial by e_j: the term is x^a e_j y~^K = (-1)^{|K|} x^a y~^K e_j
    Element xi(A.context());
    for (const auto& [m, c] : X.terms()) {
      int frames = 0, odd_rest = 0;
      for (int i = 0; i < A.rank(); ++i) frames += m[A.sec_pos(i)], odd_rest += m[A.dual_pos(i)];
      for (std::size_t g = 0; g < m.size(); ++g)
        if (m[g] && g >= std::size_t(A.base_dim()) &&
            !(g >= A.sec_pos(0) && g < A.dual_pos(0) + std::size_t(A.rank())))
          throw GradingError("not a vector-valued algebroid form: " + X.to_string());
      if (frames != 1) throw GradingError("not a vector-valued algebroid form: " + X.to_string());
      if (!m[A.sec_pos(j)]) continue;
      Monomial r = m;
      r[A.sec_pos(j)] = 0;
      xi.add_term(r, odd_rest % 2 ? Rational(-c) : c);
    }
    if (!xi.is_zero()) out.emplace_back(std::move(xi), j);
  }
  return out;
}

// Froelicher-Nijenhuis bracket of vector-valued algebroid forms, with d and L
// replaced by d_A and L_u = [i_u, d_A]:
// [xi(x)x, eta(x)y] = xi^eta (x) [x,y]
//   + (xi ^ L_x eta + (-1)^{|xi|} d_A xi ^ i_x eta) (x) y
//   - (-1)^{|xi||eta|} (eta ^ L_y xi + (-1)^{|eta|} d_A eta ^ i_y xi) (x) x
inline Element algebroid_fn(const Algebroid& A, const Element& X, const Element& Y) {
  Element out(A.context());
  const auto& Q = A.Q();
  for (const auto& [xi, i] : split_algebroid_form(A, X))
    for (const auto& [eta, j] : split_algebroid_form(A, Y))
      for (const auto& [mxi, cxi] : xi.terms())
        for (const auto& [meta, ceta] : eta.terms()) {
          Element a = Element::monomial(A.context(), mxi, cxi);
          Element b = Element::monomial(A.context(), meta, ceta);
          long qa = require_degree(a), qb = require_degree(b);
          Element vx = A.section(i), vy = A.section(j);
          Operator ix = A.interior(vx), iy = A.interior(vy);
          Operator Lx = A.lie_derivative(vx), Ly = A.lie_derivative(vy);
          Element t1 = a * b * A.direct_bracket(vx, vy);
          Element t2 = (a * Lx(b) + Rational(sign_of(qa)) * Q(a) * ix(b)) * vy;
          Element t3 = (b * Ly(a) + Rational(sign_of(qb)) * Q(b) * iy(a)) * vx;
          out += t1 + t2 - Rational(sign_of(qa * qb)) * t3;
        }
  return out;
}

// [i_{[X,Y]}, d_A] = [[i_X,d_A],[i_Y,d_A]].
inline CheckReport check_algebroid_fn(const Algebroid& A,
                                      const std::vector<std::pair<Element, Element>>& pairs) {
  CheckReport report("[i_[X,Y]_FN, d_A] = [L_X, L_Y]");
  for (const auto& [X, Y] : pairs) {
    Operator lhs = A.lie_derivative(algebroid_fn(A, X, Y));
    Operator rhs = commutator(A.lie_derivative(X), A.lie_derivative(Y));
    auto w = witness_text(lhs, rhs, A.forms());
    report.record(w.empty(), {X.to_string(), Y.to_string()}, w);
  }
  return report;
}

// Random vector-valued algebroid q-forms.
inline Element random_vector_valued(const Algebroid& A, Random& rng, int q, unsigned max_degree,
                                    unsigned terms = 2) {
  std::vector<std::size_t> ev, fr, du;
  for (int al = 0; al < A.base_dim(); ++al) ev.push_back(A.x_pos(al));
  for (int i = 0; i < A.rank(); ++i) fr.push_back(A.sec_pos(i)), du.push_back(A.dual_pos(i));
  return rng.combination(A.context(), ev, max_degree, {{fr, 1}, {du, std::size_t(q)}}, terms);
}

// Koszul bracket of forms on a Poisson manifold, from
// i_{[alpha,beta]^P} = [[i_alpha, d_P], i_beta] on multivectors (Pi T*M model).
class PoissonManifold {
 public:
  // With checked unset the bivector need not be Poisson; d_P and the bracket
  // [[i_a,d_P],i_b] are still defined.
  PoissonManifold(const Manifold& M, const Element& P, bool checked = true) : M_(M), P_(P) {
    if (!M.is_multivector(P) || M.require_bidegree(P, "bivector") != std::pair{0, 2}) {
      if (!P.is_zero()) throw GradingError("not a bivector: " + P.to_string());
    }
    pp_ = schouten(M, P, P);
    if (checked && !pp_.is_zero()) throw NotPoisson("[P,P] != 0", pp_.to_string());
    Ppit_ = M.to_pit(P);
    dP_ = Derivation(M.pit(), 1);
    for (std::size_t g = 0; g < M.pit()->size(); ++g)
      dP_.set(g, M.schouten_structure()(Ppit_, Element::generator(M.pit(), g)));
  }

  const Manifold& manifold() const { return M_; }
  const Element& bivector() const { return P_; }
  const Element& schouten_square() const { return pp_; }
  bool is_poisson() const { return pp_.is_zero(); }
  // d_P = [P, .] on Pi T*M functions.
  Operator d_P() const { return Operator::derivation(dP_, "d_P"); }
  const Derivation& d_P_derivation() const { return dP_; }

  // i_alpha on Pi T*M functions.
  Operator form_interior_pit(const Element& alpha) const {
    if (!M_.is_form(alpha)) throw GradingError("not a form: " + alpha.to_string());
    const auto& pit = M_.pit();
    const std::size_t f = pit->first_odd();
    std::map<OddSet, Element> coef;
    for (const auto& [m, c] : alpha.terms()) {
      OddSet key = 0;
      Monomial rest(pit->size());
      for (int i = 1; i <= M_.dim(); ++i) {
        if (m[M_.dx_pos(i)]) key |= OddSet(1) << (M_.xt_pos(i) - f);
        rest[M_.pit_x_pos(i)] = m[M_.x_pos(i)];
      }
      coef.try_emplace(key, pit).first->second.add_term(rest, c);
    }
    return Operator::algebraic(pit, coef, "i(" + alpha.to_string() + ")");
  }

  Element koszul(const Element& alpha, const Element& beta) const {
    Operator op = commutator(commutator(form_interior_pit(alpha), d_P()), form_interior_pit(beta));
    const auto& pit = M_.pit();
    std::map<OddSet, Element> xi;
    try {
      xi = decompose_algebraic(op, M_.pit_carrier().odd, M_.pit_carrier());
    } catch (const UnsupportedShape& e) {
      throw InternalInconsistency(std::string("[[i_a,d_P],i_b] is not an interior product: ") + e.what());
    }
    const std::size_t f = pit->first_odd();
    Element out(M_.tensors());
    for (const auto& [key, w] : xi) {
      Monomial dx(M_.tensors()->size());
      for (int i = 1; i <= M_.dim(); ++i)
        if (key >> (M_.xt_pos(i) - f) & 1) dx[M_.dx_pos(i)] = 1;
      for (const auto& [m, c] : w.terms()) {
        Monomial t = dx;
        for (int i = 1; i <= M_.dim(); ++i) {
          if (m[M_.xt_pos(i)])
            throw InternalInconsistency("[[i_a,d_P],i_b] has a multivector coefficient");
          t[M_.x_pos(i)] = m[M_.pit_x_pos(i)];
        }
        out.add_term(t, c);
      }
    }
    return out;
  }

  Element sharp(const Element& xi) const { return loday::sharp(M_, P_, xi); }

  // {f,g}_P = [[f,P],g].
  Element poisson(const Element& f, const Element& g) const {
    const auto& S = M_.schouten_structure();
    return M_.from_pit(S(S(M_.to_pit(f), Ppit_), M_.to_pit(g)));
  }

 private:
  Manifold M_;
  Element P_, Ppit_, pp_;
  Derivation dP_;
};

// Closed formula on 1-forms: L_{P#a} b - L_{P#b} a - d(P(a,b)).
inline Element koszul_closed_formula(const PoissonManifold& PM, const Element& alpha,
                                     const Element& beta) {
  const auto& M = PM.manifold();
  Element pa = PM.sharp(alpha), pb = PM.sharp(beta);
  return lie_derivation(M, pa)(beta) - lie_derivation(M, pb)(alpha) -
         apply_d(M, evaluate_multivector(M, PM.bivector(), {alpha, beta}));
}

inline Element koszul_bracket(const Manifold& M, const Element& P, const Element& alpha,
                              const Element& beta) {
  return PoissonManifold(M, P).koszul(alpha, beta);
}

// Cotangent algebroid of a Poisson manifold: frame dx1..dxn, anchor P#, and
// structure functions read off the Koszul brackets of the coordinate 1-forms.
inline Algebroid cotangent_algebroid(const PoissonManifold& PM) {
  const auto& M = PM.manifold();
  const int n = M.dim();
  std::vector<std::string> coords, frame;
  for (int i = 1; i <= n; ++i) coords.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) frame.push_back("dx" + std::to_string(i));
  AnchorTable a;
  StructureFunctions C;
  for (int i = 1; i <= n; ++i) {
    Element v = PM.sharp(M.dx(i));
    for (int al = 1; al <= n; ++al) {
      Element c = M.component(v, al);
      if (!c.is_zero()) a.emplace(std::pair{i - 1, al - 1}, c);
    }
    for (int j = i + 1; j <= n; ++j) {
      Element k = PM.koszul(M.dx(i), M.dx(j));
      for (int l = 1; l <= n; ++l) {
        Element c = partial(k, M.dx_pos(l));
        if (!c.is_zero()) C.emplace(std::tuple{i - 1, j - 1, l - 1}, c);
      }
    }
  }
  return Algebroid(coords, frame, a, C);
}

}  // namespace loday
