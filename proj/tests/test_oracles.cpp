#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "support.hpp"

using namespace orderlab;
using namespace testing_support;

namespace {

Elem lit(const GroupSpec& s, const std::string& t) { return parse_element(s, t); }

struct Labelled {
  OrderOracle oracle;
  int max_radius;
};

std::vector<Labelled> catalog() {
  return {{lex_oracle(GroupSpec::free_abelian(1)), 3},
          {lex_oracle(GroupSpec::free_abelian(2)), 3},
          {lex_oracle(GroupSpec::free_abelian(3)), 2},
          {lex_oracle(parse_group("heis")), 2},
          {lex_oracle(parse_group("klein")), 3},
          {lex_oracle(parse_group("abelian:1*heis")), 1},
          {norm_oracle(GroupSpec::free_abelian(2)), 3},
          {magnus_oracle(GroupSpec::free_group(2)), 2},
          {affine_dynamical_oracle(parse_group("affine")), 2},
          {affine_bi_oracle(parse_group("affine")), 2}};
}

}  // namespace

TEST(Lex, SpecExamples) {
  const GroupSpec z2 = GroupSpec::free_abelian(2);
  EXPECT_EQ(normal_form_lex_compare(z2, lit(z2, "(0,1)"), lit(z2, "(1,0)")), Cmp::Less);
  EXPECT_EQ(normal_form_lex_compare(z2, lit(z2, "(1,-5)"), lit(z2, "(1,-5)")), Cmp::Equal);
  EXPECT_EQ(lex_oracle(z2).declared, AxiomClass::BiInvariantTotal);
  EXPECT_EQ(lex_oracle(parse_group("klein")).declared, AxiomClass::LeftInvariantTotal);
  EXPECT_THROW(lex_oracle(GroupSpec::free_group(2)), SpecMismatch);
}

TEST(Norm, SpecExamples) {
  const GroupSpec z2 = GroupSpec::free_abelian(2);
  EXPECT_EQ(norm_lio_compare(z2, lit(z2, "(1,0)"), lit(z2, "(-1,0)")), Cmp::Unrelated);
  EXPECT_EQ(norm_lio_compare(z2, lit(z2, "(1,1)"), lit(z2, "(2,0)")), Cmp::Less);
  EXPECT_EQ(norm_lio_compare(z2, lit(z2, "(1,1)"), lit(z2, "(1,1)")), Cmp::Equal);
}

TEST(Magnus, FactsUnderTheDocumentedConvention) {
  const GroupSpec f2 = GroupSpec::free_group(2);
  const Elem x = generator(f2, 0), y = generator(f2, 1);
  EXPECT_EQ(magnus_compare(f2, multiply(f2, x, y), multiply(f2, y, x)), Cmp::Greater);
  EXPECT_EQ(magnus_compare(f2, commutator(f2, x, y), identity(f2)), Cmp::Greater);
  EXPECT_EQ(magnus_compare(f2, x, y), Cmp::Less);
  // and the dense oracle agrees
  const Word wx{{0, 1}}, wy{{1, 1}};
  EXPECT_EQ(dense_magnus_compare(2, {{0, 1}, {1, 1}}, {{1, 1}, {0, 1}}), Cmp::Greater);
  EXPECT_EQ(dense_magnus_compare(2, {{0, -1}, {1, -1}, {0, 1}, {1, 1}}, {}), Cmp::Greater);
  EXPECT_EQ(dense_magnus_compare(2, wx, wy), Cmp::Less);
}

TEST(Magnus, TruncatedMatchesDenseOnRandomPairs) {
  const GroupSpec f2 = GroupSpec::free_group(2);
  std::mt19937_64 rng(21);
  const auto words = reduced_words(2, 4);
  for (int i = 0; i < 1500; ++i) {
    const Word& a = words[rng() % words.size()];
    const Word& b = words[rng() % words.size()];
    EXPECT_EQ(magnus_compare(f2, evaluate(f2, a), evaluate(f2, b)), dense_magnus_compare(2, a, b)) << format_word(f2, a) << " vs " << format_word(f2, b);
  }
  const GroupSpec f3 = GroupSpec::free_group(3);
  const auto words3 = reduced_words(3, 3);
  for (int i = 0; i < 500; ++i) {
    const Word& a = words3[rng() % words3.size()];
    const Word& b = words3[rng() % words3.size()];
    EXPECT_EQ(magnus_compare(f3, evaluate(f3, a), evaluate(f3, b)), dense_magnus_compare(3, a, b));
  }
}

// A reduced word w != e has a nonzero non-constant term of degree <= |w| in
// its dense expansion, which is what bounds the truncation degree.
TEST(Magnus, TruncationBoundHoldsForReducedWordsUpToLengthSix) {
  for (const auto& w : reduced_words(2, 6)) {
    if (w.empty()) continue;
    const Poly p = dense_expand(w, static_cast<int>(w.size()));
    bool found = false;
    for (const auto& [m, c] : p) found = found || (!m.empty() && c != 0);
    EXPECT_TRUE(found);
  }
}

TEST(Affine, SpecExamples) {
  const GroupSpec a = parse_group("affine");
  const Elem x = lit(a, "(-2,1/8)"), y = lit(a, "(-1,1/2)");
  EXPECT_EQ(affine_dynamical_compare(a, x, identity(a)), Cmp::Greater);
  EXPECT_EQ(affine_dynamical_compare(a, y, identity(a)), Cmp::Greater);
  // x y^n (0) <= 3/8 < y^n(0) for n >= 1
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(affine_dynamical_compare(a, multiply(a, x, power(a, y, n)), power(a, y, n)), Cmp::Less);
  EXPECT_EQ(affine_bi_compare(a, lit(a, "(1,0)"), lit(a, "(0,100)")), Cmp::Greater);
  EXPECT_EQ(affine_bi_compare(a, lit(a, "(0,-1)"), identity(a)), Cmp::Less);
}

TEST(Oracles, DeclaredClassHoldsOnBalls) {
  for (const auto& [o, r] : catalog()) {
    for (int radius = 1; radius <= r; ++radius) {
      const auto v = check_axioms(restrict(o, ball(o.spec, radius)), o.declared);
      EXPECT_TRUE(v.empty()) << o.id << " on " << to_string(o.spec) << " r=" << radius << ": " << (v.empty() ? "" : v.front().axiom);
    }
  }
}

TEST(Oracles, MislabelledOraclesAreCaught) {
  const GroupSpec z2 = GroupSpec::free_abelian(2);
  EXPECT_FALSE(check_axioms(restrict(relabeled(norm_oracle(z2), AxiomClass::TotalOrder), ball(z2, 2)), AxiomClass::TotalOrder).empty());
  const GroupSpec a = parse_group("affine");
  const auto v = check_axioms(restrict(relabeled(affine_dynamical_oracle(a), AxiomClass::BiInvariantTotal), ball(a, 2)), AxiomClass::BiInvariantTotal);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().axiom, "right-invariance");
  EXPECT_FALSE(check_axioms(restrict(lex_oracle(parse_group("klein")), ball(parse_group("klein"), 2)), AxiomClass::BiInvariantTotal).empty());
}

TEST(Oracles, ComparisonsAreAntisymmetric) {
  std::mt19937_64 rng(22);
  for (const auto& [o, r] : catalog()) {
    for (int i = 0; i < 100; ++i) {
      const Elem a = random_element(o.spec, rng, 4), b = random_element(o.spec, rng, 4);
      EXPECT_EQ(o.compare(a, b), flip(o.compare(b, a)));
      EXPECT_EQ(o.compare(a, b) == Cmp::Equal, a == b);
    }
  }
}

TEST(Cones, RoundTripReproducesLeftInvariantOracles) {
  for (const auto& [o, r] : catalog()) {
    if (!is_left_invariant(o.declared)) continue;
    const OrderOracle back = cone_to_order(order_to_cone(o));
    const Window w = ball(o.spec, std::min(r, 2));
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) EXPECT_EQ(back.compare(w[i], w[j]), o.compare(w[i], w[j])) << o.id;
  }
}

TEST(Cones, HalfspaceFromFile) {
  const std::string path = ::testing::TempDir() + "halfspace.txt";
  {
    std::ofstream f(path);
    f << "# irrational-free tie break\n(1,0)\n\n(0,1)\n";
  }
  const GroupSpec z2 = GroupSpec::free_abelian(2);
  const OrderOracle o = parse_oracle(z2, "cone:" + path);
  EXPECT_TRUE(check_axioms(restrict(o, ball(z2, 2)), AxiomClass::BiInvariantTotal).empty());
  EXPECT_EQ(o.compare(lit(z2, "(0,5)"), lit(z2, "(1,0)")), Cmp::Less);
  std::remove(path.c_str());
  EXPECT_THROW(parse_oracle(z2, "nope"), ParseError);
}
