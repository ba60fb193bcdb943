#include <gtest/gtest.h>

#include "loday/bigbracket.hpp"
#include "loday/random.hpp"

using namespace loday;

namespace {

LieStructure heisenberg() { return LieStructure({"e1", "e2", "e3"}, {{{0, 1, 2}, 1}}); }

// h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h
LieStructure sl2() {
  return LieStructure({"h", "e", "f"}, {{{0, 1, 1}, 2}, {{0, 2, 2}, -2}, {{1, 2, 0}, 1}});
}

LieStructure abelian(int n) {
  std::vector<std::string> b;
  for (int i = 1; i <= n; ++i) b.push_back("e" + std::to_string(i));
  return LieStructure(b, {});
}

// [e1,e2] = e2, the non-abelian 2-dimensional algebra, plus a central e3
LieStructure affine() { return LieStructure({"e1", "e2", "e3"}, {{{0, 1, 1}, 1}}); }

std::vector<std::size_t> range(int from, int to) {
  std::vector<std::size_t> v;
  for (int i = from; i < to; ++i) v.push_back(std::size_t(i));
  return v;
}

Element random_wedge(Random& rng, const LieStructure& g, int p, int q, unsigned terms = 2) {
  return rng.combination(g.big_context(), {}, 0,
                         {{range(0, g.dim()), std::size_t(p)}, {range(g.dim(), 2 * g.dim()), std::size_t(q)}},
                         terms);
}

}  // namespace

TEST(BigBracket, Pairing) {
  auto g = heisenberg();
  EXPECT_EQ(big_bracket(g, g.e(0), g.dual(0)), Element(g.big_context(), 1));
  EXPECT_TRUE(big_bracket(g, g.e(0), g.dual(1)).is_zero());
  EXPECT_TRUE(big_bracket(g, g.e(0), g.e(1)).is_zero());
}

TEST(BigBracket, HeisenbergMuSquareZero) {
  auto g = heisenberg();
  EXPECT_TRUE(big_bracket(g, g.mu(), g.mu()).is_zero());
  EXPECT_TRUE(satisfies_jacobi(g));
}

TEST(BigBracket, DerivedBracketOfBasis) {
  auto g = heisenberg();
  EXPECT_EQ(algebraic_schouten(g, g.e(0), g.e(1)), g.e(2));
  EXPECT_EQ(algebraic_schouten(g, g.e(1), g.e(0)), -g.e(2));
  auto s = sl2();
  EXPECT_EQ(algebraic_schouten(s, s.e(0), s.e(1)), Rational(2) * s.e(1));
  EXPECT_EQ(algebraic_schouten(s, s.e(1), s.e(2)), s.e(0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(algebraic_schouten(s, s.e(i), s.e(j)), s.bracket_of_basis(i, j));
}

TEST(BigBracket, CeDifferentialOnOneForms) {
  for (const auto& g : {heisenberg(), sl2(), affine()}) {
    for (int a = 0; a < g.dim(); ++a) {
      Element da = ce_differential(g, g.dual(a));
      for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) {
          Element lhs = evaluate_cochain(g, da, {g.e(i), g.e(j)});
          Element rhs = -evaluate_cochain(g, g.dual(a), {g.bracket_of_basis(i, j)});
          EXPECT_EQ(lhs, rhs);
        }
    }
  }
  // (d e3')(e1,e2) = -e3'([e1,e2]) = -1 forces d e3' = -e1' e2'
  auto h = heisenberg();
  EXPECT_EQ(ce_differential(h, h.dual(2)), -(h.dual(0) * h.dual(1)));
  auto a = abelian(3);
  EXPECT_TRUE(ce_differential(a, a.dual(0)).is_zero());
}

TEST(BigBracket, CeSquareZero) {
  Random rng(21);
  for (const auto& g : {heisenberg(), sl2(), affine()})
    for (int q = 0; q <= 3; ++q) {
      Element c = random_wedge(rng, g, 0, q, 3);
      EXPECT_TRUE(ce_differential(g, ce_differential(g, c)).is_zero());
    }
}

TEST(BigBracket, MuSquareMatchesTripleSum) {
  Random rng(4);
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 60; ++trial) {
    StructureConstants C;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (rng.integer(0, 3) == 0) C[{i, j, k}] = rng.integer(-2, 2);
    LieStructure g({"a", "b", "c"}, C, false);
    EXPECT_EQ(g.is_lie(), satisfies_jacobi(g));
    (g.is_lie() ? accepted : rejected)++;
    if (!g.is_lie()) EXPECT_THROW(LieStructure({"a", "b", "c"}, C), NotLieAlgebra);
  }
  EXPECT_GT(accepted, 0);
  EXPECT_GT(rejected, 0);
}

TEST(BigBracket, NijenhuisRichardsonByEmbedding) {
  // on vector-valued 1-forms the big bracket is mapped to the commutator of
  // the derivations i_X of Lambda E*
  Random rng(8);
  auto g = sl2();
  for (int t = 0; t < 20; ++t) {
    Element X = random_wedge(rng, g, 1, 1, 3), Y = random_wedge(rng, g, 1, 1, 3);
    Operator lhs = interior_lie_tensor(g, big_bracket(g, X, Y));
    Operator rhs = commutator(interior_lie_tensor(g, X), interior_lie_tensor(g, Y));
    EXPECT_TRUE(op_equal(lhs, rhs, g.cochains()));
  }
}

TEST(BigBracket, AlgebraicSchoutenIsGradedLie) {
  Random rng(9);
  for (const auto& g : {heisenberg(), sl2(), affine()}) {
    auto ctx = DerivedContext<GcaBracketAlgebra>::interior(GcaBracketAlgebra{g.big()}, g.mu());
    std::vector<TripleOf<GcaBracketAlgebra>> triples;
    for (int t = 0; t < 30; ++t)
      triples.push_back({random_wedge(rng, g, rng.integer(1, 2), 0),
                         random_wedge(rng, g, rng.integer(1, 2), 0),
                         random_wedge(rng, g, rng.integer(0, 2), 0)});
    EXPECT_TRUE(check_loday(ctx, triples).passed());
    for (const auto& [a, b, c] : triples) {
      long da = require_degree(a) - 1, db = require_degree(b) - 1;
      // skew of degree -1: [a,b] = -(-1)^{(|a|-1)(|b|-1)} [b,a]
      EXPECT_EQ(algebraic_schouten(g, a, b),
                Rational(-sign_of(da * db)) * algebraic_schouten(g, b, a));
      long dc = require_degree(c);
      (void)dc;
      // biderivation in the second slot
      EXPECT_EQ(algebraic_schouten(g, a, b * c),
                algebraic_schouten(g, a, b) * c +
                    Rational(sign_of(da * (db + 1))) * (b * algebraic_schouten(g, a, c)));
    }
  }
}

TEST(BigBracket, LiealgOperatorIdentity) {
  Random rng(10);
  for (const auto& g : {heisenberg(), sl2(), affine()}) {
    std::vector<std::pair<Element, Element>> pairs;
    for (int i = 0; i < g.dim(); ++i)
      for (int j = 0; j < g.dim(); ++j) pairs.emplace_back(g.e(i), g.e(j));
    for (int t = 0; t < 10; ++t)
      pairs.emplace_back(random_wedge(rng, g, rng.integer(1, 3), 0),
                         random_wedge(rng, g, rng.integer(1, 3), 0));
    auto rep = check_liealg(g, pairs);
    EXPECT_TRUE(rep.passed()) << rep.summary();
  }
}

TEST(BigBracket, LinearPoisson) {
  auto g = heisenberg();
  auto eta = [&](int i) { return Element::generator(g.linear_context(), std::size_t(i)); };
  EXPECT_EQ(linear_poisson(g, eta(0), eta(1)), eta(2));
  auto s = sl2();
  auto et = [&](int i) { return Element::generator(s.linear_context(), std::size_t(i)); };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Element expect(s.linear_context());
      for (int k = 0; k < 3; ++k) expect += s.constant(i, j, k) * et(k);
      EXPECT_EQ(linear_poisson(s, et(i), et(j)), expect);
    }
  auto a = abelian(2);
  auto ea = [&](int i) { return Element::generator(a.linear_context(), std::size_t(i)); };
  EXPECT_TRUE(linear_poisson(a, ea(0) * ea(0), ea(1)).is_zero());
  Random rng(12);
  for (int t = 0; t < 30; ++t) {
    auto p = [&] { return rng.combination(s.linear_context(), range(0, 3), 2, {}, 3); };
    Element f = p(), u = p(), v = p();
    EXPECT_EQ(linear_poisson(s, f, u * v), linear_poisson(s, f, u) * v + u * linear_poisson(s, f, v));
  }
}

TEST(BigBracket, GcybeAbelian) {
  auto g = abelian(3);
  Random rng(14);
  for (int t = 0; t < 5; ++t) {
    auto rep = gcybe_check(g, random_wedge(rng, g, 2, 0, 3));
    EXPECT_TRUE(rep.rr.is_zero());
    EXPECT_TRUE(rep.invariant);
    EXPECT_TRUE(rep.chain);
  }
}

TEST(BigBracket, GcybeSl2) {
  auto g = sl2();
  // r = e ^ f: [r,r] is a multiple of h ^ e ^ f, which is ad-invariant
  auto rep = gcybe_check(g, g.e(1) * g.e(2));
  EXPECT_FALSE(rep.rr.is_zero());
  Element hef = g.e(0) * g.e(1) * g.e(2);
  ASSERT_EQ(rep.rr.size(), 1u);
  EXPECT_EQ(rep.rr, rep.rr.coefficient(hef.terms().begin()->first) * hef);
  EXPECT_TRUE(rep.invariant);
  EXPECT_TRUE(rep.chain);
  EXPECT_EQ(rep.drinfeld, Rational(-2) * rep.rr);
}

TEST(BigBracket, GcybeChainOnRandomPairs) {
  Random rng(15);
  int nonzero = 0;
  for (const auto& g : {heisenberg(), sl2(), affine()})
    for (int t = 0; t < 6; ++t) {
      auto rep = gcybe_check(g, random_wedge(rng, g, 2, 0, 3));
      EXPECT_TRUE(rep.chain) << rep.dr_dr << " vs " << rep.d_rr;
      EXPECT_EQ(rep.invariant, rep.cobracket);
      nonzero += !rep.d_rr.is_zero();
    }
  EXPECT_GT(nonzero, 0);
}

TEST(BigBracket, GcybeRejectsWrongBidegree) {
  auto g = heisenberg();
  EXPECT_THROW(gcybe_check(g, g.e(0)), GradingError);
}
