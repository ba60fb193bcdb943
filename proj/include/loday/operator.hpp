#pragma once

// Linear endomorphisms of a free graded-commutative algebra, kept as composition
// trees. Equality is decided by evaluation on a finite family determined by the
// differential-operator order of each tree.

#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loday/gca.hpp"

namespace loday {

// Generators an operator is allowed to act on. Inputs used for testing are
// monomials in `even` of bounded degree times arbitrary products of `odd`.
struct Carrier {
  std::vector<std::size_t> even;
  std::vector<std::size_t> odd;

  static Carrier of(const ContextPtr& ctx, const std::vector<std::string>& names) {
    Carrier c;
    for (const auto& n : names) {
      auto pos = ctx->position(n);
      (ctx->is_odd(pos) ? c.odd : c.even).push_back(pos);
    }
    return c;
  }
};

// A set of odd generator positions, ordered increasingly. Bit i stands for
// odd generator at canonical position first_odd + i.
using OddSet = std::uint64_t;

class Operator {
 public:
  enum class Kind { zero, identity, multiply, derivation, algebraic, opaque, sum, compose };
  using Function = std::function<Element(const Element&)>;

  Operator() = default;

  static Operator zero(const ContextPtr& ctx) {
    auto n = make(Kind::zero, ctx);
    n->parity = Parity::even;
    n->label = "0";
    return Operator(n);
  }

  static Operator identity(const ContextPtr& ctx) {
    auto n = make(Kind::identity, ctx);
    n->parity = Parity::even;
    n->degree = 0;
    n->label = "id";
    return Operator(n);
  }

  // Left multiplication by e.
  static Operator multiply(const Element& e, std::string label = {}) {
    auto n = make(Kind::multiply, e.context());
    n->element = e;
    n->parity = e.parity();
    n->degree = e.is_zero() ? std::optional<long>(0) : e.degree();
    n->label = label.empty() ? "e(" + e.to_string() + ")" : std::move(label);
    return Operator(n);
  }

  static Operator derivation(const Derivation& d, std::string label = "D") {
    auto n = make(Kind::derivation, d.context());
    n->derivation = d;
    n->parity = d.parity();
    n->degree = d.degree();
    n->order = 1;
    n->label = std::move(label);
    return Operator(n);
  }

  // sum over K of coef[K] o d_{k1} o ... o d_{kp}, with d_k the left partial
  // derivative by the odd generator k and k1 < ... < kp.
  static Operator algebraic(const ContextPtr& ctx, std::map<OddSet, Element> coef,
                            std::string label = {}) {
    auto n = make(Kind::algebraic, ctx);
    std::optional<Parity> par;
    std::optional<long> deg;
    bool deg_ok = true;
    for (auto it = coef.begin(); it != coef.end();) {
      const std::size_t nodd = ctx->size() - ctx->first_odd();
      if (nodd < 64 && (it->first >> nodd) != 0)
        throw Error("odd set refers to a generator outside the context");
      if (it->second.context() != ctx) throw ContextMismatch();
      if (it->second.is_zero()) {
        it = coef.erase(it);
        continue;
      }
      auto cp = it->second.parity();
      int k = std::popcount(it->first);
      std::optional<Parity> p;
      if (cp) p = parity_of(bit(*cp) + k);
      if (!par)
        par = p;
      else if (p != par)
        par = std::nullopt, deg_ok = false;
      auto cd = it->second.degree();
      if (!cd) {
        deg_ok = false;
      } else {
        long d = *cd;
        for (int b = 0; b < 64; ++b)
          if (it->first >> b & 1) d -= ctx->degree(ctx->first_odd() + b);
        if (deg && *deg != d) deg_ok = false;
        deg = d;
      }
      ++it;
    }
    n->parity = coef.empty() ? std::optional<Parity>(Parity::even) : par;
    n->degree = coef.empty() ? std::optional<long>(0) : (deg_ok ? deg : std::nullopt);
    n->coef = std::move(coef);
    n->label = label.empty() ? "alg" : std::move(label);
    return Operator(n);
  }

  // Arbitrary linear map. Without an order bound the operator cannot take part
  // in op_equal.
  static Operator opaque(const ContextPtr& ctx, Function f, Parity parity,
                         std::optional<long> degree, std::optional<unsigned> order,
                         std::string label = "T") {
    auto n = make(Kind::opaque, ctx);
    n->function = std::move(f);
    n->parity = parity;
    n->degree = degree;
    n->order = order;
    n->label = std::move(label);
    return Operator(n);
  }

  bool valid() const { return static_cast<bool>(node_); }
  Kind kind() const { return node_->kind; }
  const ContextPtr& context() const { return node_->ctx; }
  std::optional<Parity> parity() const { return node_->parity; }
  std::optional<long> degree() const { return node_->degree; }
  // Differential-operator order in the even generators, or nullopt if unknown.
  std::optional<unsigned> order() const { return node_->order; }
  const std::string& label() const { return node_->label; }

  Parity require_parity() const {
    if (!node_->parity) throw GradingError("operator '" + describe() + "' has no parity");
    return *node_->parity;
  }

  std::string describe() const {
    switch (node_->kind) {
      case Kind::sum: {
        std::string s = "(";
        for (std::size_t i = 0; i < node_->terms.size(); ++i) {
          const auto& [c, op] = node_->terms[i];
          if (i) s += " + ";
          if (c != 1) s += c.get_str() + "*";
          s += op.describe();
        }
        return s + ")";
      }
      case Kind::compose:
        return node_->parts[0].describe() + " o " + node_->parts[1].describe();
      default:
        return node_->label;
    }
  }

  Element operator()(const Element& a) const {
    if (a.context() != node_->ctx) throw ContextMismatch();
    const auto& n = *node_;
    switch (n.kind) {
      case Kind::zero:
        return Element(n.ctx);
      case Kind::identity:
        return a;
      case Kind::multiply:
        return n.element * a;
      case Kind::derivation:
        return n.derivation(a);
      case Kind::algebraic:
        return apply_algebraic(n, a);
      case Kind::opaque: {
        Element r = n.function(a);
        if (r.context() != n.ctx) throw ContextMismatch();
        return r;
      }
      case Kind::sum: {
        Element r(n.ctx);
        for (const auto& [c, op] : n.terms) r += c * op(a);
        return r;
      }
      case Kind::compose:
        return n.parts[0](n.parts[1](a));
    }
    return Element(n.ctx);
  }

  friend Operator operator+(const Operator& a, const Operator& b) {
    return linear_combination({{Rational(1), a}, {Rational(1), b}});
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    return linear_combination({{Rational(1), a}, {Rational(-1), b}});
  }
  friend Operator operator*(const Rational& c, const Operator& a) {
    return linear_combination({{c, a}});
  }
  friend Operator operator-(const Operator& a) { return Rational(-1) * a; }

  static Operator linear_combination(std::vector<std::pair<Rational, Operator>> terms) {
    if (terms.empty()) throw Error("empty linear combination");
    const ContextPtr& ctx = terms.front().second.context();
    auto n = make(Kind::sum, ctx);
    std::optional<Parity> par;
    std::optional<long> deg;
    bool first = true, deg_ok = true;
    std::optional<unsigned> order = 0u;
    for (auto& [c, op] : terms) {
      if (op.context() != ctx) throw ContextMismatch();
      if (c == 0 || op.kind() == Kind::zero) continue;
      if (first) {
        par = op.parity();
        deg = op.degree();
        deg_ok = deg.has_value();
      } else {
        if (op.parity() != par) par = std::nullopt;
        if (op.degree() != deg) deg_ok = false;
      }
      first = false;
      if (!op.order() || !order)
        order = std::nullopt;
      else
        order = std::max(*order, *op.order());
      n->terms.emplace_back(c, op);
    }
    if (n->terms.empty()) return zero(ctx);
    n->parity = par;
    n->degree = deg_ok ? deg : std::nullopt;
    n->order = order;
    return Operator(n);
  }

  // a o b
  static Operator compose(const Operator& a, const Operator& b) {
    if (a.context() != b.context()) throw ContextMismatch();
    if (a.kind() == Kind::zero || b.kind() == Kind::zero) return zero(a.context());
    if (a.kind() == Kind::identity) return b;
    if (b.kind() == Kind::identity) return a;
    auto n = make(Kind::compose, a.context());
    n->parts = {a, b};
    if (a.parity() && b.parity()) n->parity = parity_of(bit(*a.parity()) + bit(*b.parity()));
    if (a.degree() && b.degree()) n->degree = *a.degree() + *b.degree();
    if (a.order() && b.order()) n->order = *a.order() + *b.order();
    return Operator(n);
  }

  friend Operator operator*(const Operator& a, const Operator& b) { return compose(a, b); }

 private:
  struct Node {
    Kind kind = Kind::zero;
    ContextPtr ctx;
    std::optional<Parity> parity;
    std::optional<long> degree;
    std::optional<unsigned> order = 0u;
    std::string label;
    Element element;
    Derivation derivation;
    std::map<OddSet, Element> coef;
    Function function;
    std::vector<std::pair<Rational, Operator>> terms;
    std::vector<Operator> parts;  // left, right of a composition
  };

  explicit Operator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<Node> make(Kind k, const ContextPtr& ctx) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->ctx = ctx;
    return n;
  }

  static Element apply_algebraic(const Node& n, const Element& a) {
    const auto& ctx = *n.ctx;
    const std::size_t f = ctx.first_odd();
    Element out(n.ctx);
    for (const auto& [m, c] : a.terms()) {
      OddSet present = 0;
      for (std::size_t i = f; i < m.size(); ++i)
        if (m[i]) present |= OddSet(1) << (i - f);
      for (const auto& [k, coef] : n.coef) {
        if ((k & present) != k) continue;
        // d_{k1} ... d_{kp} applied innermost-first; each partial sees only the
        // odd generators before it, none of which have been removed yet.
        Monomial r = m;
        int flips = 0;
        for (int b = 0; b < 64; ++b) {
          if (!(k >> b & 1)) continue;
          flips += m.odd_count_before(ctx, f + b);
          r[f + b] = 0;
        }
        Element term = Element::monomial(n.ctx, r, (flips % 2) ? Rational(-c) : c);
        out += coef * term;
      }
    }
    return out;
  }

  std::shared_ptr<const Node> node_;
};

// Graded commutator ab - (-1)^{|a||b|} ba.
inline Operator commutator(const Operator& a, const Operator& b) {
  int s = koszul_sign(bit(a.require_parity()), bit(b.require_parity()));
  return Operator::linear_combination(
      {{Rational(1), a * b}, {Rational(-s), b * a}});
}

// Monomials x^J theta^K with |J| <= max_even_degree over the carrier.
inline std::vector<Element> test_family(const ContextPtr& ctx, const Carrier& carrier,
                                        unsigned max_even_degree) {
  std::vector<Monomial> evens{Monomial(ctx->size())};
  std::vector<Monomial> frontier = evens;
  for (unsigned d = 1; d <= max_even_degree; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : frontier) {
      // Extend only with generators at or after the last one used to avoid repeats.
      std::size_t last = 0;
      for (std::size_t i = 0; i < carrier.even.size(); ++i)
        if (m[carrier.even[i]]) last = i;
      for (std::size_t i = (d == 1 ? 0 : last); i < carrier.even.size(); ++i) {
        Monomial e = m;
        e[carrier.even[i]] += 1;
        next.push_back(e);
      }
    }
    evens.insert(evens.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  if (carrier.odd.size() > 20) throw Error("carrier has too many odd generators for testing");
  std::vector<Element> family;
  const std::size_t subsets = std::size_t(1) << carrier.odd.size();
  for (const auto& e : evens)
    for (std::size_t s = 0; s < subsets; ++s) {
      Monomial m = e;
      for (std::size_t i = 0; i < carrier.odd.size(); ++i)
        if (s >> i & 1) m[carrier.odd[i]] = 1;
      family.push_back(Element::monomial(ctx, m));
    }
  return family;
}

inline unsigned required_order(const Operator& a, const Operator& b) {
  if (!a.order() || !b.order())
    throw Error("operator equality needs an order bound on both sides: '" +
                (a.order() ? b : a).describe() + "'");
  return std::max(*a.order(), *b.order());
}

// First family member on which a and b differ, if any.
inline std::optional<Element> op_difference_witness(const Operator& a, const Operator& b,
                                                    const Carrier& carrier,
                                                    unsigned extra_degree = 0) {
  if (a.context() != b.context()) throw ContextMismatch();
  unsigned k = required_order(a, b) + extra_degree;
  for (const auto& t : test_family(a.context(), carrier, k))
    if (!(a(t) == b(t))) return t;
  return std::nullopt;
}

inline bool op_equal(const Operator& a, const Operator& b, const Carrier& carrier,
                     unsigned extra_degree = 0) {
  return !op_difference_witness(a, b, carrier, extra_degree).has_value();
}

inline bool op_is_zero(const Operator& a, const Carrier& carrier) {
  return op_equal(a, Operator::zero(a.context()), carrier);
}

// Writes an operator that is linear over the even generators as
// sum_K xi_K d_K over subsets K of the given odd generators, by inverting
//   T(theta^K) = sum_{L subset K} xi_L d_L theta^K
// from the smallest subsets upward. The result is verified with op_equal and
// UnsupportedShape is thrown if T is not of this form.
inline std::map<OddSet, Element> decompose_algebraic(const Operator& op,
                                                     const std::vector<std::size_t>& odd,
                                                     const Carrier& carrier) {
  const auto& ctx = op.context();
  const std::size_t f = ctx->first_odd();
  const std::size_t r = odd.size();
  if (r > 20) throw Error("too many odd generators to decompose");
  auto to_set = [&](std::size_t sub) {
    OddSet k = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (sub >> i & 1) k |= OddSet(1) << (odd[i] - f);
    return k;
  };
  auto theta = [&](std::size_t sub) {
    Monomial m(ctx->size());
    for (std::size_t i = 0; i < r; ++i)
      if (sub >> i & 1) m[odd[i]] = 1;
    return Element::monomial(ctx, m);
  };
  std::vector<std::size_t> order(std::size_t(1) << r);
  for (std::size_t s = 0; s < order.size(); ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(),
                   [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
  std::map<OddSet, Element> xi;
  std::map<std::size_t, Element> by_sub;
  for (auto sub : order) {
    Element th = theta(sub);
    Element rest = op(th);
    for (const auto& [l, xl] : by_sub) {
      if ((l & sub) != l || l == sub) continue;
      Operator dl = Operator::algebraic(ctx, {{to_set(l), Element(ctx, 1)}});
      rest -= xl * dl(th);
    }
    // d_K theta^K = (-1)^{p(p-1)/2}
    int p = std::popcount(sub);
    if ((p * (p - 1) / 2) % 2) rest = -rest;
    if (!rest.is_zero()) {
      by_sub.emplace(sub, rest);
      xi.emplace(to_set(sub), rest);
    }
  }
  Operator rebuilt = Operator::algebraic(ctx, xi);
  if (!op_equal(op, rebuilt, carrier))
    throw UnsupportedShape("operator '" + op.describe() + "' is not algebraic");
  return xi;
}

// Pairs a "vector" odd generator with the odd generator it contracts.
struct Contraction {
  std::size_t vector;
  std::size_t form;
};

// Embedding X -> i_X. Each term c * w * v_{j1}...v_{jp} of X, where the v are
// vector generators and w holds the rest, becomes e_{c w} o i_{j1} o ... o i_{jp}
// with i_j the left partial derivative by the paired form generator. The pairing
// must be order preserving.
inline Operator interior_embedding(const Element& X, const std::vector<Contraction>& pairs,
                                   std::string label = {}) {
  const auto& ctx = X.context();
  const std::size_t f = ctx->first_odd();
  for (std::size_t i = 1; i < pairs.size(); ++i)
    if (pairs[i - 1].vector >= pairs[i].vector || pairs[i - 1].form >= pairs[i].form)
      throw Error("contraction pairs must be increasing");
  std::map<OddSet, Element> coef;
  for (const auto& [m, c] : X.terms()) {
    Monomial rest = m;
    OddSet key = 0;
    int flips = 0;
    for (const auto& p : pairs) {
      if (!m[p.vector]) continue;
      rest[p.vector] = 0;
      key |= OddSet(1) << (p.form - f);
      // odd generators of the rest that sit after this vector generator
      for (std::size_t i = p.vector + 1; i < m.size(); ++i) {
        bool is_vector = false;
        for (const auto& q : pairs) is_vector |= (q.vector == i);
        if (!is_vector && m[i] && ctx->is_odd(i)) ++flips;
      }
    }
    auto [it, inserted] = coef.try_emplace(key, ctx);
    it->second.add_term(rest, (flips % 2) ? Rational(-c) : c);
  }
  return Operator::algebraic(ctx, std::move(coef), label.empty() ? "i(" + X.to_string() + ")" : label);
}

// Inverse of interior_embedding on operators that are algebraic in the form
// generators of the pairs.
inline Element interior_tensor(const std::map<OddSet, Element>& xi, const ContextPtr& ctx,
                               const std::vector<Contraction>& pairs) {
  const std::size_t f = ctx->first_odd();
  Element out(ctx);
  for (const auto& [key, w] : xi) {
    Monomial v(ctx->size());
    for (int b = 0; b < 64; ++b) {
      if (!(key >> b & 1)) continue;
      bool found = false;
      for (const auto& p : pairs)
        if (p.form == f + b) v[p.vector] = 1, found = true;
      if (!found) throw UnsupportedShape("operator contracts a generator with no vector partner");
    }
    out += w * Element::monomial(ctx, v);
  }
  return out;
}

}  // namespace loday
