#pragma once

// Derived brackets [a,b]_(D) = (-1)^{n+|a|+1} [Da,b] over any algebra with a
// graded Lie bracket, together with the checks of their basic properties.

#include <concepts>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loday/gca.hpp"
#include "loday/operator.hpp"
#include "loday/report.hpp"

namespace loday {

template <class A>
concept BracketAlgebra = requires(const A& alg, const typename A::Value& a, const Rational& c) {
  { alg.bracket(a, a) } -> std::same_as<typename A::Value>;
  { alg.bracket_degree() } -> std::convertible_to<long>;
  { alg.degree(a) } -> std::convertible_to<long>;
  { alg.add(a, a) } -> std::same_as<typename A::Value>;
  { alg.scale(c, a) } -> std::same_as<typename A::Value>;
  { alg.equal(a, a) } -> std::same_as<bool>;
  { alg.is_zero(a) } -> std::same_as<bool>;
  { alg.to_string(a) } -> std::convertible_to<std::string>;
};

// A free graded-commutative algebra with a Leibniz-extended bracket.
struct GcaBracketAlgebra {
  using Value = Element;
  BracketStructure structure;

  Element bracket(const Element& a, const Element& b) const { return structure(a, b); }
  long bracket_degree() const { return structure.degree(); }
  long degree(const Element& a) const { return require_degree(a); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element scale(const Rational& c, const Element& a) const { return c * a; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  std::string to_string(const Element& a) const { return a.to_string(); }
};

// Endomorphisms of a graded-commutative algebra under the graded commutator.
// Only parities enter the signs, so an operator without a Z-degree reports its
// parity as degree.
struct CommutatorAlgebra {
  using Value = Operator;
  Carrier carrier;

  Operator bracket(const Operator& a, const Operator& b) const { return commutator(a, b); }
  long bracket_degree() const { return 0; }
  long degree(const Operator& a) const {
    if (a.degree()) return *a.degree();
    return bit(a.require_parity());
  }
  Operator add(const Operator& a, const Operator& b) const { return a + b; }
  Operator scale(const Rational& c, const Operator& a) const { return c * a; }
  bool equal(const Operator& a, const Operator& b) const { return op_equal(a, b, carrier); }
  bool is_zero(const Operator& a) const { return op_is_zero(a, carrier); }
  std::string to_string(const Operator& a) const { return a.describe(); }
};

static_assert(BracketAlgebra<GcaBracketAlgebra>);
static_assert(BracketAlgebra<CommutatorAlgebra>);

template <BracketAlgebra A>
class DerivedContext {
 public:
  using Value = typename A::Value;
  using Map = std::function<Value(const Value&)>;

  // D = [d, .] for an element with |d| + n odd and [d,d] = 0.
  static DerivedContext interior(A alg, Value d, bool checked = true) {
    DerivedContext c(std::move(alg));
    long n = c.alg_.bracket_degree();
    long dd = c.alg_.degree(d);
    if (checked && (dd + n) % 2 == 0)
      throw GradingError("|d| + n must be odd for an interior differential");
    if (checked) {
      Value sq = c.alg_.bracket(d, d);
      if (!c.alg_.is_zero(sq)) throw NotSquareZero("[d,d] != 0", c.alg_.to_string(sq));
    }
    c.element_ = d;
    c.map_degree_ = dd + n;
    return c;
  }

  // Any odd map; the caller vouches for it being a square-zero derivation.
  static DerivedContext unchecked(A alg, Map D, long degree) {
    DerivedContext c(std::move(alg));
    c.map_ = std::move(D);
    c.map_degree_ = degree;
    return c;
  }

  const A& algebra() const { return alg_; }
  long base_degree() const { return alg_.bracket_degree(); }
  long differential_degree() const { return map_degree_; }
  long derived_degree() const { return base_degree() + map_degree_; }
  const std::optional<Value>& element() const { return element_; }

  Value D(const Value& a) const {
    if (element_) return alg_.bracket(*element_, a);
    return map_(a);
  }

 private:
  explicit DerivedContext(A alg) : alg_(std::move(alg)) {}

  A alg_;
  std::optional<Value> element_;
  Map map_;
  long map_degree_ = 1;
};

// Derived context of a GCA bracket by a Derivation. D must be odd, square to
// zero on generators and be a derivation of the bracket on generator pairs.
inline DerivedContext<GcaBracketAlgebra> derived_by_derivation(const BracketStructure& B,
                                                                const Derivation& D,
                                                                bool checked = true) {
  if (B.context() != D.context()) throw ContextMismatch();
  if (checked) {
    if (D.parity() != Parity::odd) throw GradingError("the differential must be odd");
    const auto& ctx = B.context();
    const long n = B.degree();
    for (std::size_t g = 0; g < ctx->size(); ++g) {
      Element sq = D(D(Element::generator(ctx, g)));
      if (!sq.is_zero())
        throw NotSquareZero("D^2 != 0 on generator " + ctx->generator(g).name, sq.to_string());
    }
    for (std::size_t g = 0; g < ctx->size(); ++g)
      for (std::size_t h = 0; h < ctx->size(); ++h) {
        Element a = Element::generator(ctx, g), b = Element::generator(ctx, h);
        Element lhs = D(B(a, b));
        Element rhs = B(D(a), b);
        Element t = B(a, D(b));
        rhs += sign_of(long(D.degree()) * (ctx->degree(g) + n)) > 0 ? t : -t;
        if (!(lhs == rhs))
          throw Error("D is not a derivation of the bracket on (" + ctx->generator(g).name + ", " +
                      ctx->generator(h).name + ")");
      }
  }
  return DerivedContext<GcaBracketAlgebra>::unchecked(
      GcaBracketAlgebra{B}, [D](const Element& a) { return D(a); }, D.degree());
}

template <BracketAlgebra A>
typename A::Value derived_bracket(const DerivedContext<A>& ctx, const typename A::Value& a,
                                  const typename A::Value& b) {
  const auto& alg = ctx.algebra();
  long s = ctx.base_degree() + alg.degree(a) + 1;
  auto r = alg.bracket(ctx.D(a), b);
  return sign_of(s) > 0 ? r : alg.scale(Rational(-1), r);
}

// [[a,d],b], cross-checked against the general definition.
template <BracketAlgebra A>
typename A::Value derived_by_element(const DerivedContext<A>& ctx, const typename A::Value& a,
                                     const typename A::Value& b) {
  if (!ctx.element()) throw Error("derived_by_element needs an interior differential");
  const auto& alg = ctx.algebra();
  auto r = alg.bracket(alg.bracket(a, *ctx.element()), b);
  if (!alg.equal(r, derived_bracket(ctx, a, b)))
    throw InternalInconsistency("[[a,d],b] differs from (-1)^{n+|a|+1}[[d,a],b]");
  return r;
}

// 1/2 ([a,Db] - (-1)^{n+|a|} [Da,b])
template <BracketAlgebra A>
typename A::Value skew_symmetrize(const DerivedContext<A>& ctx, const typename A::Value& a,
                                  const typename A::Value& b) {
  const auto& alg = ctx.algebra();
  alg.degree(b);
  auto first = alg.bracket(a, ctx.D(b));
  auto second = alg.bracket(ctx.D(a), b);
  Rational s = sign_of(ctx.base_degree() + alg.degree(a)) > 0 ? Rational(-1, 2) : Rational(1, 2);
  return alg.add(alg.scale(Rational(1, 2), first), alg.scale(s, second));
}

template <BracketAlgebra A>
struct TripleOf {
  typename A::Value a, b, c;
};

template <BracketAlgebra A>
struct PairOf {
  typename A::Value a, b;
};

// Loday residual [a,[b,c]] - [[a,b],c] - (-1)^{(m+|a|)(m+|b|)}[b,[a,c]] for a
// bracket of degree m.
template <BracketAlgebra A, class Bracket>
typename A::Value loday_residual(const A& alg, long m, const Bracket& br,
                                 const typename A::Value& a, const typename A::Value& b,
                                 const typename A::Value& c) {
  auto r = alg.add(br(a, br(b, c)), alg.scale(Rational(-1), br(br(a, b), c)));
  long s = (m + alg.degree(a)) * (m + alg.degree(b));
  return alg.add(r, alg.scale(Rational(-sign_of(s)), br(b, br(a, c))));
}

template <BracketAlgebra A>
CheckReport check_loday(const DerivedContext<A>& ctx, const std::vector<TripleOf<A>>& triples,
                        std::string name = "loday") {
  CheckReport report(std::move(name));
  const auto& alg = ctx.algebra();
  auto br = [&](const auto& x, const auto& y) { return derived_bracket(ctx, x, y); };
  for (const auto& t : triples) {
    auto r = loday_residual(alg, ctx.derived_degree(), br, t.a, t.b, t.c);
    bool ok = alg.is_zero(r);
    report.record(ok, {alg.to_string(t.a), alg.to_string(t.b), alg.to_string(t.c)},
                  ok ? "0" : alg.to_string(r));
  }
  return report;
}

// D[a,b]_(D) = [Da,Db] (D is a morphism to the base bracket) and
// D[a,b]_(D) = [Da,b]_(D) + (-1)^{|D|(|a|+m)} [a,Db]_(D) (D is a derivation of
// the derived bracket). For interior differentials also a -> [d,a] and
// a -> [a,d] as morphisms.
template <BracketAlgebra A>
CheckReport check_morphism_derivation(const DerivedContext<A>& ctx,
                                      const std::vector<PairOf<A>>& pairs,
                                      std::string name = "morphism/derivation") {
  CheckReport report(std::move(name));
  const auto& alg = ctx.algebra();
  const long m = ctx.derived_degree();
  const long k = ctx.differential_degree();
  auto minus = [&](const auto& x, const auto& y) { return alg.add(x, alg.scale(Rational(-1), y)); };
  for (const auto& [a, b] : pairs) {
    std::vector<std::string> in{alg.to_string(a), alg.to_string(b)};
    auto ab = derived_bracket(ctx, a, b);
    auto Dab = ctx.D(ab);
    auto r1 = minus(Dab, alg.bracket(ctx.D(a), ctx.D(b)));
    report.record(alg.is_zero(r1), in, "morphism: " + alg.to_string(r1));
    auto t = derived_bracket(ctx, a, ctx.D(b));
    auto rhs = alg.add(derived_bracket(ctx, ctx.D(a), b),
                       sign_of(k * (alg.degree(a) + m)) > 0 ? t : alg.scale(Rational(-1), t));
    auto r2 = minus(Dab, rhs);
    report.record(alg.is_zero(r2), in, "derivation: " + alg.to_string(r2));
    if (ctx.element()) {
      const auto& d = *ctx.element();
      auto r3 = minus(alg.bracket(d, ab), alg.bracket(alg.bracket(d, a), alg.bracket(d, b)));
      report.record(alg.is_zero(r3), in, "left interior morphism: " + alg.to_string(r3));
      auto r4 = minus(alg.bracket(ab, d), alg.bracket(alg.bracket(a, d), alg.bracket(b, d)));
      report.record(alg.is_zero(r4), in, "right interior morphism: " + alg.to_string(r4));
    }
  }
  return report;
}

// For two interior differentials with [d1,d1] = [d2,d2] = [d1,d2] = 0, checks
// that [.,.]_{d1} + [.,.]_{d2} equals [.,.]_{d1+d2} and satisfies the Loday identity.
template <BracketAlgebra A>
CheckReport check_compatibility(const DerivedContext<A>& c1, const DerivedContext<A>& c2,
                                const std::vector<TripleOf<A>>& triples,
                                std::string name = "compatibility") {
  if (!c1.element() || !c2.element())
    throw Error("compatibility needs interior differentials");
  const auto& alg = c1.algebra();
  const auto& d1 = *c1.element();
  const auto& d2 = *c2.element();
  auto mixed = alg.bracket(d1, d2);
  if (!alg.is_zero(mixed)) throw NotSquareZero("[d1,d2] != 0", alg.to_string(mixed));
  auto sum = DerivedContext<A>::interior(alg, alg.add(d1, d2));
  CheckReport report(std::move(name));
  auto br = [&](const auto& x, const auto& y) {
    return alg.add(derived_bracket(c1, x, y), derived_bracket(c2, x, y));
  };
  for (const auto& t : triples) {
    std::vector<std::string> in{alg.to_string(t.a), alg.to_string(t.b), alg.to_string(t.c)};
    auto lin = alg.add(br(t.a, t.b), alg.scale(Rational(-1), derived_bracket(sum, t.a, t.b)));
    report.record(alg.is_zero(lin), in, "sum of brackets: " + alg.to_string(lin));
    auto r = loday_residual(alg, c1.derived_degree(), br, t.a, t.b, t.c);
    report.record(alg.is_zero(r), in, "jacobi: " + alg.to_string(r));
  }
  return report;
}

}  // namespace loday
