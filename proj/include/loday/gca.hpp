#pragma once

// Free Z-graded commutative algebras over Q: polynomial even generators tensor
// Grassmann odd generators. Every other module builds on the types here.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loday/error.hpp"
#include "loday/report.hpp"

namespace loday {

using Rational = mpq_class;

// p/q in lowest terms.
inline Rational rational(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity parity_of(long degree) { return (degree % 2 != 0) ? Parity::odd : Parity::even; }
inline int bit(Parity p) { return static_cast<int>(p); }
// (-1)^{ab} for parities a, b.
inline int koszul_sign(int a, int b) { return ((a & b) & 1) ? -1 : 1; }
inline int sign_of(long exponent) { return (exponent % 2 != 0) ? -1 : 1; }

struct Generator {
  std::string name;
  int degree = 0;

  Parity parity() const { return parity_of(degree); }
};

class Context;
using ContextPtr = std::shared_ptr<const Context>;

// Generators are stored in canonical order: even generators first, then odd
// ones, each group in declaration order. Positions below index this order.
class Context {
 public:
  static constexpr std::size_t max_generators = 64;

  static ContextPtr make(const std::vector<Generator>& declared) {
    if (declared.size() > max_generators)
      throw Error("a context holds at most 64 generators");
    auto ctx = std::shared_ptr<Context>(new Context());
    for (const auto& g : declared)
      if (g.parity() == Parity::even) ctx->gens_.push_back(g);
    ctx->first_odd_ = ctx->gens_.size();
    for (const auto& g : declared)
      if (g.parity() == Parity::odd) ctx->gens_.push_back(g);
    for (std::size_t i = 0; i < ctx->gens_.size(); ++i) {
      if (ctx->gens_[i].name.empty()) throw Error("generator names must be non-empty");
      if (!ctx->index_.emplace(ctx->gens_[i].name, i).second)
        throw Error("duplicate generator name '" + ctx->gens_[i].name + "'");
    }
    return ctx;
  }

  std::size_t size() const { return gens_.size(); }
  std::size_t first_odd() const { return first_odd_; }
  const Generator& generator(std::size_t pos) const { return gens_.at(pos); }
  bool is_odd(std::size_t pos) const { return pos >= first_odd_; }
  int degree(std::size_t pos) const { return gens_[pos].degree; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t position(std::string_view name) const {
    auto pos = find(name);
    if (!pos) throw Error("unknown generator '" + std::string(name) + "'");
    return *pos;
  }

 private:
  Context() = default;

  std::vector<Generator> gens_;
  std::size_t first_odd_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
};

// Dense exponent vector over the canonical generator order. Odd exponents are 0 or 1.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : exps_(n, 0) {}

  std::size_t size() const { return exps_.size(); }
  std::uint16_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint16_t& operator[](std::size_t i) { return exps_[i]; }

  unsigned total() const {
    unsigned t = 0;
    for (auto e : exps_) t += e;
    return t;
  }

  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
  }

  long degree(const Context& ctx) const {
    long d = 0;
    for (std::size_t i = 0; i < exps_.size(); ++i) d += long(exps_[i]) * ctx.degree(i);
    return d;
  }

  // Number of odd generators present (parity of the monomial is this mod 2
  // because odd generators carry odd degree and even generators even degree).
  int odd_count(const Context& ctx) const {
    int c = 0;
    for (std::size_t i = ctx.first_odd(); i < exps_.size(); ++i) c += exps_[i];
    return c;
  }

  int odd_count_before(const Context& ctx, std::size_t pos) const {
    int c = 0;
    for (std::size_t i = ctx.first_odd(); i < pos; ++i) c += exps_[i];
    return c;
  }

  // Total degree in the even generators.
  unsigned even_total(const Context& ctx) const {
    unsigned t = 0;
    for (std::size_t i = 0; i < ctx.first_odd(); ++i) t += exps_[i];
    return t;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.exps_ <=> b.exps_; }

 private:
  std::vector<std::uint16_t> exps_;
};

// Term order used for storage and printing: lower total first, then
// lexicographically larger exponent vectors first (x1 before x2).
struct TermOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return b < a;
  }
};

// Product of two canonical monomials. Returns 0 when an odd generator repeats,
// otherwise the Koszul sign of reordering into canonical form.
inline int multiply_monomials(const Context& ctx, const Monomial& a, const Monomial& b,
                              Monomial& out) {
  const std::size_t n = ctx.size();
  out = Monomial(n);
  for (std::size_t i = 0; i < ctx.first_odd(); ++i) out[i] = a[i] + b[i];
  int swaps = 0;
  int a_odd_after = a.odd_count(ctx);
  for (std::size_t i = ctx.first_odd(); i < n; ++i) {
    a_odd_after -= a[i];
    if (b[i]) {
      if (a[i]) return 0;
      swaps += a_odd_after;
    }
    out[i] = a[i] + b[i];
  }
  return sign_of(swaps);
}

class Element {
 public:
  using Terms = std::map<Monomial, Rational, TermOrder>;

  Element() = default;
  explicit Element(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  Element(ContextPtr ctx, Rational c) : ctx_(std::move(ctx)) {
    c.canonicalize();
    if (c != 0) terms_.emplace(Monomial(ctx_->size()), std::move(c));
  }

  static Element generator(const ContextPtr& ctx, std::size_t pos) {
    Monomial m(ctx->size());
    m[pos] = 1;
    Element e(ctx);
    e.terms_.emplace(std::move(m), Rational(1));
    return e;
  }
  static Element generator(const ContextPtr& ctx, std::string_view name) {
    return generator(ctx, ctx->position(name));
  }
  static Element monomial(const ContextPtr& ctx, const Monomial& m, Rational c = 1) {
    Element e(ctx);
    c.canonicalize();
    e.add_term(m, c);
    return e;
  }

  const ContextPtr& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // Z-degree if every term has the same degree. The zero element reports nullopt
  // here; use is_homogeneous() to treat it as homogeneous.
  std::optional<long> degree() const {
    std::optional<long> d;
    for (const auto& [m, c] : terms_) {
      long dm = m.degree(*ctx_);
      if (d && *d != dm) return std::nullopt;
      d = dm;
    }
    return d;
  }
  bool is_homogeneous() const { return is_zero() || degree().has_value(); }

  // Parity if all terms agree, nullopt otherwise (zero counts as even).
  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
      Parity pm = parity_of(m.odd_count(*ctx_));
      if (p && *p != pm) return std::nullopt;
      p = pm;
    }
    return p.value_or(Parity::even);
  }

  // Highest total degree in the even generators (polynomial degree).
  unsigned polynomial_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.even_total(*ctx_));
    return d;
  }

  Element& operator+=(const Element& o) {
    if (!ctx_) ctx_ = o.ctx_;
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    if (!ctx_) ctx_ = o.ctx_;
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Element& operator*=(Rational s) {
    s.canonicalize();
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }

  friend Element operator*(const Element& a, const Element& b) {
    a.check_same(b);
    Element out(a.ctx_);
    Monomial prod;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int s = multiply_monomials(*a.ctx_, ma, mb, prod);
        if (s != 0) out.add_term(prod, s > 0 ? Rational(ca * cb) : Rational(-ca * cb));
      }
    return out;
  }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_) throw ContextMismatch();
    return a.terms_ == b.terms_;
  }

  // Terms of the given Z-degree.
  Element component(long deg) const {
    Element out(ctx_);
    for (const auto& [m, c] : terms_)
      if (m.degree(*ctx_) == deg) out.terms_.emplace(m, c);
    return out;
  }

  // Terms satisfying a predicate on the monomial.
  template <class Pred>
  Element filter(Pred&& keep) const {
    Element out(ctx_);
    for (const auto& [m, c] : terms_)
      if (keep(m)) out.terms_.emplace(m, c);
    return out;
  }

  // Coefficient of a monomial (0 if absent).
  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::string to_string() const;

  void check_same(const Element& o) const {
    if (ctx_ != o.ctx_) throw ContextMismatch();
  }

 private:
  ContextPtr ctx_;
  Terms terms_;
};

inline std::string monomial_string(const Context& ctx, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += '*';
    s += ctx.generator(i).name;
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

// Canonical text: terms in storage order joined by " + " / " - ", unit
// coefficients omitted, rationals as p/q.
inline std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    bool neg = c < 0;
    std::string body;
    if (m.is_one())
      body = mag.get_str();
    else if (mag == 1)
      body = monomial_string(*ctx_, m);
    else
      body = mag.get_str() + "*" + monomial_string(*ctx_, m);
    if (first)
      out = neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Element& a) { return os << a.to_string(); }

inline Element scalar(const ContextPtr& ctx, const Rational& c) { return Element(ctx, c); }

inline Element power(const Element& a, unsigned k) {
  Element r(a.context(), 1);
  for (unsigned i = 0; i < k; ++i) r = r * a;
  return r;
}

// Homogeneous degree or GradingError. Zero is accepted and reports 0.
inline long require_degree(const Element& a, std::string_view what = "element") {
  if (a.is_zero()) return 0;
  auto d = a.degree();
  if (!d) throw GradingError(std::string(what) + " is not homogeneous: " + a.to_string());
  return *d;
}

// Left partial derivative with respect to one generator.
inline Element partial(const Element& a, std::size_t pos) {
  const auto& ctx = *a.context();
  Element out(a.context());
  for (const auto& [m, c] : a.terms()) {
    if (!m[pos]) continue;
    Monomial r = m;
    r[pos] -= 1;
    if (ctx.is_odd(pos))
      out.add_term(r, m.odd_count_before(ctx, pos) % 2 ? Rational(-c) : c);
    else
      out.add_term(r, c * m[pos]);
  }
  return out;
}

// Rebuilds an element in another context, sending generator i to the image
// map[i] (an arbitrary element of the target). Signs are recomputed by
// multiplying the images in canonical order.
inline Element substitute(const Element& a, const ContextPtr& target,
                          const std::vector<std::optional<Element>>& images) {
  const auto& ctx = *a.context();
  Element out(target);
  for (const auto& [m, c] : a.terms()) {
    Element t(target, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!images[i]) throw Error("no image for generator '" + ctx.generator(i).name + "'");
      t = t * power(*images[i], m[i]);
    }
    out += t;
  }
  return out;
}

// Transports an element between contexts by generator name, optionally renamed.
template <class Rename>
Element transport(const Element& a, const ContextPtr& target, Rename&& rename) {
  const auto& ctx = *a.context();
  std::vector<std::optional<Element>> images(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    auto name = rename(ctx.generator(i).name);
    if (auto pos = target->find(name)) {
      if (target->is_odd(*pos) != ctx.is_odd(i))
        throw ContextMismatch("generator '" + name + "' changes parity in transport");
      images[i] = Element::generator(target, *pos);
    }
  }
  return substitute(a, target, images);
}

inline Element transport(const Element& a, const ContextPtr& target) {
  return transport(a, target, [](const std::string& s) { return s; });
}

// Derivation of the free algebra given by its values on generators. Graded
// Leibniz: D(ab) = D(a) b + (-1)^{|D||a|} a D(b).
class Derivation {
 public:
  Derivation() = default;
  Derivation(ContextPtr ctx, int degree)
      : ctx_(std::move(ctx)), degree_(degree), images_(ctx_->size()) {}

  static Derivation zero(const ContextPtr& ctx, int degree) {
    Derivation d(ctx, degree);
    for (auto& im : d.images_) im = Element(ctx);
    return d;
  }

  Derivation& set(std::size_t pos, Element image) {
    if (image.context() != ctx_) throw ContextMismatch();
    if (!image.is_zero()) {
      auto deg = image.degree();
      long want = long(ctx_->degree(pos)) + degree_;
      if (!deg || *deg != want)
        throw GradingError("image of '" + ctx_->generator(pos).name + "' must have degree " +
                           std::to_string(want) + ", got " + image.to_string());
    }
    images_[pos] = std::move(image);
    return *this;
  }
  Derivation& set(std::string_view name, Element image) {
    return set(ctx_->position(name), std::move(image));
  }
  // Unset generators are taken to map to zero.
  Derivation& complete_with_zero() {
    for (auto& im : images_)
      if (!im) im = Element(ctx_);
    return *this;
  }

  const ContextPtr& context() const { return ctx_; }
  int degree() const { return degree_; }
  Parity parity() const { return parity_of(degree_); }
  bool has_image(std::size_t pos) const { return images_[pos].has_value(); }

  const Element& image(std::size_t pos) const {
    if (!images_[pos])
      throw IncompleteDerivation("derivation has no image for generator '" +
                                 ctx_->generator(pos).name + "'");
    return *images_[pos];
  }

  Element operator()(const Element& a) const {
    if (a.context() != ctx_) throw ContextMismatch();
    const auto& ctx = *ctx_;
    const bool odd = parity() == Parity::odd;
    Element out(ctx_);
    Monomial prefix, suffix, t1, t2;
    for (const auto& [m, c] : a.terms()) {
      for (std::size_t pos = 0; pos < m.size(); ++pos) {
        if (!m[pos]) continue;
        const Element& im = image(pos);
        if (im.is_zero()) continue;
        prefix = Monomial(m.size());
        suffix = Monomial(m.size());
        for (std::size_t i = 0; i < pos; ++i) prefix[i] = m[i];
        prefix[pos] = m[pos] - 1;
        for (std::size_t i = pos + 1; i < m.size(); ++i) suffix[i] = m[i];
        Rational coef = c * m[pos];
        if (odd && m.odd_count_before(ctx, pos) % 2) coef = -coef;
        for (const auto& [mi, ci] : im.terms()) {
          int s1 = multiply_monomials(ctx, prefix, mi, t1);
          if (!s1) continue;
          int s2 = multiply_monomials(ctx, t1, suffix, t2);
          if (!s2) continue;
          out.add_term(t2, (s1 * s2 > 0) ? Rational(coef * ci) : Rational(-coef * ci));
        }
      }
    }
    return out;
  }

  friend Derivation operator+(const Derivation& a, const Derivation& b) {
    if (a.ctx_ != b.ctx_) throw ContextMismatch();
    if (a.degree_ != b.degree_) throw GradingError("cannot add derivations of different degree");
    Derivation r(a.ctx_, a.degree_);
    for (std::size_t i = 0; i < a.images_.size(); ++i)
      if (a.images_[i] && b.images_[i]) r.images_[i] = *a.images_[i] + *b.images_[i];
    return r;
  }
  friend Derivation operator*(const Rational& s, const Derivation& a) {
    Derivation r = a;
    for (auto& im : r.images_)
      if (im) *im *= s;
    return r;
  }

 private:
  ContextPtr ctx_;
  int degree_ = 0;
  std::vector<std::optional<Element>> images_;
};

// d/dg for a single generator, as a derivation of degree -|g|.
inline Derivation partial_derivation(const ContextPtr& ctx, std::size_t pos) {
  Derivation d = Derivation::zero(ctx, -ctx->degree(pos));
  d.set(pos, Element(ctx, 1));
  return d;
}

enum class Symmetry { graded_skew, none };

// Degree-n bilinear bracket given on generator pairs and extended as a
// biderivation:
//   {a, bc} = {a,b} c + (-1)^{(|a|+n)|b|} b {a,c}
//   {ab, c} = a {b,c} + (-1)^{|b|(|c|+n)} {a,c} b
// Unlisted pairs are zero.
class BracketStructure {
 public:
  BracketStructure() = default;
  BracketStructure(ContextPtr ctx, int degree, Symmetry symmetry = Symmetry::graded_skew)
      : ctx_(std::move(ctx)), degree_(degree), symmetry_(symmetry),
        table_(ctx_->size() * ctx_->size()) {}

  const ContextPtr& context() const { return ctx_; }
  int degree() const { return degree_; }
  Symmetry symmetry() const { return symmetry_; }

  BracketStructure& set(std::size_t a, std::size_t b, const Element& value) {
    if (value.context() != ctx_) throw ContextMismatch();
    if (!value.is_zero()) {
      long want = long(ctx_->degree(a)) + ctx_->degree(b) + degree_;
      auto d = value.degree();
      if (!d || *d != want)
        throw GradingError("bracket {" + ctx_->generator(a).name + "," +
                           ctx_->generator(b).name + "} must have degree " +
                           std::to_string(want));
    }
    if (symmetry_ == Symmetry::graded_skew) {
      int s = -koszul_sign(shifted(a), shifted(b));
      if (a == b && !value.is_zero() && s == -1)
        throw Error("graded skew-symmetry forces {" + ctx_->generator(a).name + "," +
                    ctx_->generator(a).name + "} = 0");
      table_[b * ctx_->size() + a] = s > 0 ? value : -value;
    }
    table_[a * ctx_->size() + b] = value;
    return *this;
  }
  BracketStructure& set(std::string_view a, std::string_view b, const Element& value) {
    return set(ctx_->position(a), ctx_->position(b), value);
  }

  const Element* lookup(std::size_t a, std::size_t b) const {
    const auto& v = table_[a * ctx_->size() + b];
    return (v && !v->is_zero()) ? &*v : nullptr;
  }

  Element operator()(const Element& a, const Element& b) const {
    if (a.context() != ctx_ || b.context() != ctx_) throw ContextMismatch();
    Element out(ctx_);
    for (const auto& [mb, cb] : b.terms()) {
      // {g, mb} for every generator g, computed lazily.
      std::vector<std::optional<Element>> left(ctx_->size());
      for (const auto& [ma, ca] : a.terms()) {
        Element t = monomial_bracket(ma, mb, left);
        if (!t.is_zero()) out += Rational(ca * cb) * t;
      }
    }
    return out;
  }

 private:
  int shifted(std::size_t pos) const { return (ctx_->degree(pos) + degree_) & 1; }

  // {g, v_1 ... v_M} by the left-derivation rule.
  Element generator_bracket(std::size_t g, const Monomial& v) const {
    const auto& ctx = *ctx_;
    const int gs = shifted(g);
    Element out(ctx_);
    Monomial prefix, suffix, t1, t2;
    for (std::size_t pos = 0; pos < v.size(); ++pos) {
      if (!v[pos]) continue;
      const Element* val = lookup(g, pos);
      if (!val) continue;
      prefix = Monomial(v.size());
      suffix = Monomial(v.size());
      for (std::size_t i = 0; i < pos; ++i) prefix[i] = v[i];
      prefix[pos] = v[pos] - 1;
      for (std::size_t i = pos + 1; i < v.size(); ++i) suffix[i] = v[i];
      Rational coef = v[pos];
      if (gs && v.odd_count_before(ctx, pos) % 2) coef = -coef;
      for (const auto& [mi, ci] : val->terms()) {
        int s1 = multiply_monomials(ctx, prefix, mi, t1);
        if (!s1) continue;
        int s2 = multiply_monomials(ctx, t1, suffix, t2);
        if (!s2) continue;
        out.add_term(t2, (s1 * s2 > 0) ? Rational(coef * ci) : Rational(-coef * ci));
      }
    }
    return out;
  }

  // {u_1 ... u_N, V} by the right-derivation rule.
  Element monomial_bracket(const Monomial& u, const Monomial& v,
                           std::vector<std::optional<Element>>& left) const {
    const auto& ctx = *ctx_;
    const int cs = (v.odd_count(ctx) + degree_) & 1;
    Element out(ctx_);
    Monomial prefix, suffix, t1, t2;
    for (std::size_t pos = 0; pos < u.size(); ++pos) {
      if (!u[pos]) continue;
      if (!left[pos]) left[pos] = generator_bracket(pos, v);
      const Element& gv = *left[pos];
      if (gv.is_zero()) continue;
      prefix = Monomial(u.size());
      suffix = Monomial(u.size());
      for (std::size_t i = 0; i < pos; ++i) prefix[i] = u[i];
      prefix[pos] = u[pos] - 1;
      for (std::size_t i = pos + 1; i < u.size(); ++i) suffix[i] = u[i];
      Rational coef = u[pos];
      if (cs && suffix.odd_count(ctx) % 2) coef = -coef;
      for (const auto& [mi, ci] : gv.terms()) {
        int s1 = multiply_monomials(ctx, prefix, mi, t1);
        if (!s1) continue;
        int s2 = multiply_monomials(ctx, t1, suffix, t2);
        if (!s2) continue;
        out.add_term(t2, (s1 * s2 > 0) ? Rational(coef * ci) : Rational(-coef * ci));
      }
    }
    return out;
  }

  ContextPtr ctx_;
  int degree_ = 0;
  Symmetry symmetry_ = Symmetry::graded_skew;
  std::vector<std::optional<Element>> table_;
};

struct Triple {
  Element a, b, c;
};

// Residuals [a,[b,c]] - [[a,b],c] - (-1)^{(n+|a|)(n+|b|)} [b,[a,c]].
inline CheckReport check_graded_jacobi(const BracketStructure& B, const std::vector<Triple>& sample,
                                       std::string name = "graded jacobi") {
  CheckReport report(std::move(name));
  const long n = B.degree();
  for (const auto& [a, b, c] : sample) {
    long da = require_degree(a, "sample element");
    long db = require_degree(b, "sample element");
    require_degree(c, "sample element");
    Element r = B(a, B(b, c)) - B(B(a, b), c);
    Element t = B(b, B(a, c));
    r -= sign_of((n + da) * (n + db)) > 0 ? t : -t;
    report.record(r.is_zero(), {a.to_string(), b.to_string(), c.to_string()}, r.to_string());
  }
  return report;
}

}  // namespace loday
