#include <gtest/gtest.h>

#include "loday/algebroid.hpp"
#include "loday/bigbracket.hpp"
#include "loday/brackets.hpp"
#include "loday/cartan.hpp"
#include "loday/random.hpp"

using namespace loday;

namespace {

using BigCtx = DerivedContext<GcaBracketAlgebra>;
using OpCtx = DerivedContext<CommutatorAlgebra>;

LieStructure heisenberg() { return LieStructure({"e1", "e2", "e3"}, {{{0, 1, 2}, 1}}); }
LieStructure sl2() { return LieStructure({"h", "e", "f"}, {{{0, 1, 1}, 2}, {{0, 2, 2}, -2}, {{1, 2, 0}, 1}}); }
LieStructure affine() { return LieStructure({"e1", "e2", "e3"}, {{{0, 1, 1}, 1}}); }

std::vector<std::size_t> range(int from, int to) {
  std::vector<std::size_t> v;
  for (int i = from; i < to; ++i) v.push_back(std::size_t(i));
  return v;
}

Element random_big(Random& rng, const LieStructure& g) {
  int p = rng.integer(0, 2), q = rng.integer(0, 2);
  if (p + q == 0) p = 1;
  return rng.combination(g.big_context(), {}, 0,
                         {{range(0, g.dim()), std::size_t(p)}, {range(g.dim(), 2 * g.dim()), std::size_t(q)}}, 2);
}

Element random_pit(Random& rng, const Manifold& M) {
  return rng.combination(M.pit(), {M.pit_x_pos(1), M.pit_x_pos(2)}, 2,
                         {{{M.xt_pos(1), M.xt_pos(2)}, std::size_t(rng.integer(0, 2))}}, 2);
}

Operator random_operator(Random& rng, const Manifold& M) {
  std::vector<std::size_t> xs, dxs, dels;
  for (int i = 1; i <= M.dim(); ++i)
    xs.push_back(M.x_pos(i)), dxs.push_back(M.dx_pos(i)), dels.push_back(M.del_pos(i));
  switch (rng.integer(0, 2)) {
    case 0: return embed_i(M, rng.combination(M.tensors(), xs, 2, {{dels, 1}}, 2));
    case 1: return exterior(M, rng.combination(M.tensors(), xs, 2, {{dxs, std::size_t(rng.integer(0, 1))}}, 2));
    default: return lie_derivative(M, rng.combination(M.tensors(), xs, 2, {{dels, 1}}, 1));
  }
}

template <class A, class Gen>
std::vector<TripleOf<A>> triples(int count, Gen gen) {
  std::vector<TripleOf<A>> out;
  for (int i = 0; i < count; ++i) {
    auto a = gen(), b = gen(), c = gen();
    out.push_back({a, b, c});
  }
  return out;
}

template <class A, class Gen>
std::vector<PairOf<A>> pairs(int count, Gen gen) {
  std::vector<PairOf<A>> out;
  for (int i = 0; i < count; ++i) {
    auto a = gen(), b = gen();
    out.push_back({a, b});
  }
  return out;
}

// mu of the constants of h written in the big context of g (same dimension)
Element mu_in(const LieStructure& g, const LieStructure& h) {
  Element out(g.big_context());
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      for (int k = 0; k < g.dim(); ++k)
        if (h.constant(i, j, k) != 0) out += (h.constant(i, j, k) / 2) * (g.e(k) * g.dual(j) * g.dual(i));
  return out;
}

}  // namespace

TEST(Brackets, BigBracketByMuIsLoday) {
  Random rng(101);
  for (const auto& g : {heisenberg(), sl2(), affine()}) {
    auto ctx = BigCtx::interior(GcaBracketAlgebra{g.big()}, g.mu());
    EXPECT_EQ(ctx.derived_degree(), -1);
    auto rep = check_loday(ctx, triples<GcaBracketAlgebra>(100, [&] { return random_big(rng, g); }));
    EXPECT_TRUE(rep.passed()) << rep.summary();
    EXPECT_EQ(rep.cases, 100u);
    auto mor = check_morphism_derivation(ctx, pairs<GcaBracketAlgebra>(100, [&] { return random_big(rng, g); }));
    EXPECT_TRUE(mor.passed()) << mor.summary();
  }
}

TEST(Brackets, DerivedBracketOfBasisIsLieBracket) {
  auto g = heisenberg();
  auto ctx = BigCtx::interior(GcaBracketAlgebra{g.big()}, g.mu());
  EXPECT_EQ(derived_bracket(ctx, g.e(0), g.e(1)), g.e(2));
  EXPECT_EQ(derived_by_element(ctx, g.e(0), g.e(1)), g.e(2));
  auto s = sl2();
  auto cs = BigCtx::interior(GcaBracketAlgebra{s.big()}, s.mu());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(derived_bracket(cs, s.e(i), s.e(j)), s.bracket_of_basis(i, j));
}

TEST(Brackets, ZeroDifferential) {
  auto g = sl2();
  auto ctx = BigCtx::unchecked(GcaBracketAlgebra{g.big()}, [&](const Element&) { return Element(g.big_context()); }, 1);
  Random rng(102);
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(derived_bracket(ctx, random_big(rng, g), random_big(rng, g)).is_zero());
}

TEST(Brackets, DegreeOfDerivedBracket) {
  Random rng(103);
  auto g = affine();
  auto ctx = BigCtx::interior(GcaBracketAlgebra{g.big()}, g.mu());
  for (int t = 0; t < 50; ++t) {
    Element a = random_big(rng, g), b = random_big(rng, g);
    Element r = derived_bracket(ctx, a, b);
    if (!r.is_zero()) EXPECT_EQ(require_degree(r), require_degree(a) + require_degree(b) + ctx.derived_degree());
  }
  EXPECT_THROW(derived_bracket(ctx, g.e(0) + g.e(0) * g.e(1), g.e(1)), GradingError);
}

TEST(Brackets, SchoutenWithBivectorIsLoday) {
  Manifold M(2);
  Random rng(104);
  Element P = M.to_pit(M.x(1) * M.x(1) * M.del(1) * M.del(2));
  auto ctx = BigCtx::interior(GcaBracketAlgebra{M.schouten_structure()}, P);
  EXPECT_EQ(ctx.derived_degree(), 0);
  auto rep = check_loday(ctx, triples<GcaBracketAlgebra>(100, [&] { return random_pit(rng, M); }));
  EXPECT_TRUE(rep.passed()) << rep.summary();
  auto mor = check_morphism_derivation(ctx, pairs<GcaBracketAlgebra>(100, [&] { return random_pit(rng, M); }));
  EXPECT_TRUE(mor.passed()) << mor.summary();
}

TEST(Brackets, PoissonBracketOfCoordinates) {
  // [[x1, xt1 xt2], x2]: [x1, xt1 xt2] = -[xt1 xt2, x1] = -xt2 and
  // [-xt2, x2] = -1
  Manifold M(2);
  Element P = M.xt(1) * M.xt(2);
  auto ctx = BigCtx::interior(GcaBracketAlgebra{M.schouten_structure()}, P);
  Element x1 = M.to_pit(M.x(1)), x2 = M.to_pit(M.x(2));
  EXPECT_EQ(derived_by_element(ctx, x1, x2), Element(M.pit(), -1));
  EXPECT_EQ(derived_by_element(ctx, x2, x1), Element(M.pit(), 1));
}

TEST(Brackets, DerivationDifferential) {
  // d_P as a Derivation, no element behind it
  Manifold M(2);
  Element P = M.x(1) * M.del(1) * M.del(2);
  PoissonManifold PM(M, P);
  auto ctx = derived_by_derivation(M.schouten_structure(), PM.d_P_derivation());
  auto inner = BigCtx::interior(GcaBracketAlgebra{M.schouten_structure()}, M.to_pit(P));
  Random rng(105);
  auto ts = triples<GcaBracketAlgebra>(100, [&] { return random_pit(rng, M); });
  auto rep = check_loday(ctx, ts);
  EXPECT_TRUE(rep.passed()) << rep.summary();
  for (const auto& t : ts) {
    EXPECT_EQ(derived_bracket(ctx, t.a, t.b), derived_bracket(inner, t.a, t.b));
  }
  auto mor = check_morphism_derivation(ctx, pairs<GcaBracketAlgebra>(100, [&] { return random_pit(rng, M); }));
  EXPECT_TRUE(mor.passed()) << mor.summary();
}

TEST(Brackets, OperatorAlgebraWithDeRham) {
  Manifold M(2);
  Random rng(106);
  auto ctx = OpCtx::interior(CommutatorAlgebra{M.forms()}, M.d());
  auto rep = check_loday(ctx, triples<CommutatorAlgebra>(100, [&] { return random_operator(rng, M); }));
  EXPECT_TRUE(rep.passed()) << rep.summary();
  auto mor = check_morphism_derivation(ctx, pairs<CommutatorAlgebra>(100, [&] { return random_operator(rng, M); }));
  EXPECT_TRUE(mor.passed()) << mor.summary();
}

TEST(Brackets, RejectsNonSquareZero) {
  Manifold M(2);
  Operator bad = M.d() + Operator::multiply(M.x(1) * M.dx(2));
  EXPECT_THROW(OpCtx::interior(CommutatorAlgebra{M.forms()}, bad), NotSquareZero);
  auto g = heisenberg();
  EXPECT_THROW(BigCtx::interior(GcaBracketAlgebra{g.big()}, g.e(0) * g.dual(1)), GradingError);
}

TEST(Brackets, FailureWitnessesWhenUnchecked) {
  // [d + e_{x1 dx2}, d + e_{x1 dx2}] = 2 e_{dx1 dx2}
  Manifold M(2);
  Random rng(107);
  Operator bad = M.d() + Operator::multiply(M.x(1) * M.dx(2));
  auto ctx = OpCtx::interior(CommutatorAlgebra{M.forms()}, bad, false);
  auto ts = triples<CommutatorAlgebra>(10, [&] { return embed_i(M, M.x(2) * M.del(rng.integer(1, 2))); });
  ts.push_back({embed_i(M, M.x(1) * M.del(1)), embed_i(M, M.del(2)), M.d()});
  auto rep = check_loday(ctx, ts);
  EXPECT_FALSE(rep.passed());
  EXPECT_FALSE(rep.witnesses.empty());
  auto mor = check_morphism_derivation(ctx, {{embed_i(M, M.x(1) * M.del(1)), embed_i(M, M.del(2))}});
  EXPECT_FALSE(mor.passed());

  // an odd element of the big bracket algebra with nonzero square
  auto g = heisenberg();
  Element d = g.e(0) * g.dual(0) * g.dual(1) + g.e(1) * g.dual(2) * g.dual(0);
  ASSERT_FALSE(g.big()(d, d).is_zero());
  auto bc = BigCtx::interior(GcaBracketAlgebra{g.big()}, d, false);
  auto br = check_loday(bc, triples<GcaBracketAlgebra>(40, [&] { return random_big(rng, g); }));
  EXPECT_FALSE(br.passed());
}

TEST(Brackets, SkewSymmetrization) {
  Random rng(108);
  auto g = sl2();
  auto ctx = BigCtx::interior(GcaBracketAlgebra{g.big()}, g.mu());
  const long m = ctx.derived_degree();
  for (int t = 0; t < 50; ++t) {
    Element a = random_big(rng, g), b = random_big(rng, g);
    long da = require_degree(a), db = require_degree(b);
    Element s = skew_symmetrize(ctx, a, b) + Rational(sign_of((da + m) * (db + m))) * skew_symmetrize(ctx, b, a);
    EXPECT_TRUE(s.is_zero());
  }
  // the cochains and Lambda E are abelian and stable, so there the derived
  // bracket is already skew
  for (int t = 0; t < 30; ++t) {
    int q = rng.integer(1, 2), r = rng.integer(1, 2);
    bool cochain = rng.coin();
    auto pick = [&](int k) {
      auto idx = cochain ? range(g.dim(), 2 * g.dim()) : range(0, g.dim());
      return rng.combination(g.big_context(), {}, 0, {{idx, std::size_t(k)}}, 2);
    };
    Element a = pick(q), b = pick(r);
    EXPECT_EQ(skew_symmetrize(ctx, a, b), derived_bracket(ctx, a, b));
  }
  Element f = g.e(2);
  EXPECT_TRUE(skew_symmetrize(ctx, f, f).is_zero());
}

TEST(Brackets, CompatibilityOfCommutingPair) {
  // [e1,e2] = e3 and [e1,e4] = e4 on a 4-dimensional E; their sum is again a
  // Lie bracket, so the two mu commute
  LieStructure g({"e1", "e2", "e3", "e4"}, {{{0, 1, 2}, 1}});
  LieStructure h({"e1", "e2", "e3", "e4"}, {{{0, 3, 3}, 1}});
  Element mu1 = g.mu(), mu2 = mu_in(g, h);
  ASSERT_TRUE(g.big()(mu1, mu2).is_zero());
  GcaBracketAlgebra alg{g.big()};
  auto c1 = BigCtx::interior(alg, mu1), c2 = BigCtx::interior(alg, mu2);
  Random rng(109);
  auto gen = [&] { return random_big(rng, g); };
  auto rep = check_compatibility(c1, c2, triples<GcaBracketAlgebra>(40, gen));
  EXPECT_TRUE(rep.passed()) << rep.summary();

  auto half = BigCtx::interior(alg, Rational(1, 2) * mu1);
  EXPECT_TRUE(check_compatibility(c1, half, triples<GcaBracketAlgebra>(20, gen)).passed());
  auto zero = BigCtx::interior(alg, Element(g.big_context()), false);
  EXPECT_TRUE(check_compatibility(c1, zero, triples<GcaBracketAlgebra>(20, gen)).passed());

  // [e1,e3] = e1 does not commute with the first: the sum fails Jacobi on (e1,e2,e3)
  LieStructure k({"e1", "e2", "e3", "e4"}, {{{0, 2, 0}, 1}});
  auto c3 = BigCtx::interior(alg, mu_in(g, k));
  EXPECT_THROW(check_compatibility(c1, c3, triples<GcaBracketAlgebra>(1, gen)), NotSquareZero);
}

TEST(Brackets, OperatorSkewIsVinogradovOnMultivectors) {
  // on i_P, i_Q for multivectors the skew-symmetrized derived bracket of d is
  // the embedded Schouten bracket (up to the sign of the embedding)
  Manifold M(2);
  auto ctx = OpCtx::interior(CommutatorAlgebra{M.forms()}, M.d());
  Element X = M.x(1) * M.x(2) * M.del(1), Y = M.x(2) * M.del(1) * M.del(2);
  Operator s = skew_symmetrize(ctx, embed_i(M, X), embed_i(M, Y));
  EXPECT_TRUE(op_equal(s, derived_bracket(ctx, embed_i(M, X), embed_i(M, Y)), M.forms()));
}
