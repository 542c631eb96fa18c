#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <set>

#include "support.hpp"

using namespace orderlab;
using namespace testing_support;
using boost::multiprecision::cpp_rational;

namespace {

Elem lit(const GroupSpec& s, const std::string& t) { return parse_element(s, t); }

// Heisenberg as upper unitriangular 3x3 integer matrices.
using Mat3 = std::array<std::array<BigInt, 3>, 3>;
Mat3 heis_matrix(const Elem& a) {
  return {{{1, a.coords[0], a.coords[2]}, {0, 1, a.coords[1]}, {0, 0, 1}}};
}
Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Klein bottle group acting on the plane by (p, q) -> ((-1)^m p, q) + (n-ish)…
// concretely: row vector (p, 1) times [[s, 0], [n, 1]] plus the additive m.
struct KleinRep {
  BigInt s, n, m;
};
KleinRep klein_rep(const Elem& a) { return {a.coords[0] % 2 == 0 ? BigInt(1) : BigInt(-1), a.coords[1], a.coords[0]}; }
KleinRep klein_mul(const KleinRep& a, const KleinRep& b) { return {a.s * b.s, a.n * b.s + b.n, a.m + b.m}; }

// Dyadic affine elements as maps t -> 2^k t + d, evaluated exactly.
cpp_rational affine_apply(const Elem& a, const cpp_rational& t) {
  cpp_rational scale = 1;
  for (BigInt k = 0; k < abs(a.coords[0]); ++k) scale *= 2;
  if (a.coords[0] < 0) scale = 1 / scale;
  cpp_rational d(a.coords[1]);
  for (BigInt e = 0; e < a.coords[2]; ++e) d /= 2;
  return scale * t + d;
}

}  // namespace

TEST(GroupLaw, HeisenbergMatchesMatrixModel) {
  const GroupSpec s = parse_group("heis");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Elem a = random_element(s, rng), b = random_element(s, rng);
    const Mat3 m = heis_matrix(multiply(s, a, b));
    EXPECT_EQ(m, mat_mul(heis_matrix(a), heis_matrix(b)));
  }
  EXPECT_EQ(commutator(s, generator(s, 0), generator(s, 1)), lit(s, "(0,0,1)"));
}

TEST(GroupLaw, KleinMatchesAffineModel) {
  const GroupSpec s = parse_group("klein");
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const Elem a = random_element(s, rng), b = random_element(s, rng);
    const KleinRep got = klein_rep(multiply(s, a, b)), want = klein_mul(klein_rep(a), klein_rep(b));
    EXPECT_EQ(got.s, want.s);
    EXPECT_EQ(got.n, want.n);
    EXPECT_EQ(got.m, want.m);
  }
  EXPECT_EQ(multiply(s, lit(s, "(0,1)"), lit(s, "(1,0)")), lit(s, "(1,-1)"));
  // x y x^-1 = y^-1
  const Elem x = generator(s, 0), y = generator(s, 1);
  EXPECT_EQ(multiply(s, multiply(s, x, y), invert(s, x)), invert(s, y));
}

TEST(GroupLaw, AffineMatchesCompositionOfMaps) {
  const GroupSpec s = parse_group("affine");
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const Elem a = random_element(s, rng), b = random_element(s, rng);
    const Elem ab = multiply(s, a, b);
    for (const cpp_rational t : {cpp_rational(0), cpp_rational(1), cpp_rational(3, 7)}) EXPECT_EQ(affine_apply(ab, t), affine_apply(a, affine_apply(b, t)));
  }
  const Elem y = lit(s, "(-1,1/2)");
  EXPECT_EQ(multiply(s, y, y), lit(s, "(-2,3/4)"));
  EXPECT_EQ(invert(s, lit(s, "(1,3)")), lit(s, "(-1,-3/2)"));
}

TEST(GroupLaw, FreeGroupMatchesNaiveReduction) {
  const GroupSpec s = GroupSpec::free_group(2);
  std::mt19937_64 rng(14);
  for (int i = 0; i < 500; ++i) {
    Word w;
    const int len = static_cast<int>(rng() % 7);
    for (int k = 0; k < len; ++k) w.push_back({static_cast<int>(rng() % 2), rng() % 2 ? 1 : -1});
    EXPECT_EQ(evaluate(s, w), evaluate(s, naive_reduce(w)));
    EXPECT_EQ(evaluate(s, w).coords.size(), naive_reduce(w).size());
  }
}

TEST(GroupLaw, CyclicWrapsAround) {
  const GroupSpec s = GroupSpec::cyclic(5);
  EXPECT_EQ(power(s, generator(s, 0), 5), identity(s));
  EXPECT_EQ(invert(s, generator(s, 0)), power(s, generator(s, 0), 4));
}

TEST(GroupLaw, GroupAxiomsOnEveryBackend) {
  std::mt19937_64 rng(15);
  for (const auto& s : all_backends()) {
    SCOPED_TRACE(to_string(s));
    const Elem e = identity(s);
    for (int i = 0; i < 200; ++i) {
      const Elem a = random_element(s, rng), b = random_element(s, rng), c = random_element(s, rng);
      EXPECT_EQ(multiply(s, multiply(s, a, b), c), multiply(s, a, multiply(s, b, c)));
      EXPECT_EQ(multiply(s, a, e), a);
      EXPECT_EQ(multiply(s, e, a), a);
      EXPECT_EQ(multiply(s, a, invert(s, a)), e);
      EXPECT_EQ(invert(s, invert(s, a)), a);
      EXPECT_EQ(conjugate(s, a, b), multiply(s, invert(s, b), multiply(s, a, b)));
      EXPECT_EQ(commutator(s, a, b), multiply(s, invert(s, a), conjugate(s, a, b)));
    }
  }
}

TEST(GroupLaw, PowersAreExactForLargeExponents) {
  const GroupSpec s = parse_group("affine");
  const Elem y = lit(s, "(-1,1/2)");
  const Elem y64 = power(s, y, 64);
  EXPECT_EQ(y64.coords[0], -64);
  // y^n(0) = 1 - 2^-n
  EXPECT_EQ(affine_apply(y64, 0), 1 - cpp_rational(1, BigInt(1) << 64));
  EXPECT_EQ(multiply(s, power(s, y, -64), y64), identity(s));
}

TEST(GroupLaw, TelescopingIdentityOnEveryBackend) {
  std::mt19937_64 rng(16);
  for (const auto& s : all_backends()) {
    for (int i = 0; i < 100; ++i) {
      const Elem x = random_element(s, rng), h = random_element(s, rng);
      EXPECT_TRUE(telescope_identity_check(s, x, h, 1 + static_cast<int>(rng() % 8))) << to_string(s);
    }
  }
  EXPECT_THROW(telescope_identity_check(GroupSpec::free_abelian(1), identity(GroupSpec::free_abelian(1)), identity(GroupSpec::free_abelian(1)), 0), PreconditionError);
}

TEST(Ball, SizesMatchBruteForceWordEnumeration) {
  for (const auto& s : {GroupSpec::free_abelian(2), parse_group("heis"), GroupSpec::free_group(2), parse_group("klein"), GroupSpec::cyclic(4), parse_group("affine")}) {
    for (int r = 0; r <= 3; ++r) {
      std::set<Elem> seen;
      std::vector<Word> words{{}};
      for (int l = 0; l <= r; ++l) {
        std::vector<Word> next;
        for (const auto& w : words) {
          seen.insert(evaluate(s, w));
          if (l == r) continue;
          for (int g = 0; g < generator_count(s); ++g)
            for (int sign : {1, -1}) {
              auto c = w;
              c.push_back({g, sign});
              next.push_back(c);
            }
        }
        words = std::move(next);
      }
      const BallEnumeration b = enumerate_ball(s, r);
      EXPECT_EQ(b.elems.size(), seen.size()) << to_string(s) << " r=" << r;
      for (std::size_t i = 0; i < b.elems.size(); ++i) {
        EXPECT_EQ(evaluate(s, b.words[i]), b.elems[i]);
        EXPECT_EQ(static_cast<int>(b.words[i].size()), b.lengths[i]);
        if (i) EXPECT_LE(b.lengths[i - 1], b.lengths[i]);
      }
    }
  }
  EXPECT_EQ(enumerate_ball(GroupSpec::free_group(2), 2).elems.size(), 17u);
  EXPECT_EQ(enumerate_ball(GroupSpec::free_abelian(2), 2).elems.size(), 13u);
}

TEST(Ball, CapIsEnforced) { EXPECT_THROW(enumerate_ball(GroupSpec::free_group(3), 12, 1000), SizeCapExceeded); }

TEST(Notation, ParsesGroupsWordsAndLiterals) {
  EXPECT_EQ(to_string(parse_group("z:3")), "abelian:3");
  EXPECT_EQ(to_string(parse_group("abelian:1*cyclic:3")), "abelian:1*cyclic:3");
  EXPECT_THROW(parse_group("bogus"), ParseError);
  const GroupSpec z2 = GroupSpec::free_abelian(2);
  EXPECT_EQ(parse_element(z2, "x y^-1 x"), lit(z2, "(2,-1)"));
  EXPECT_EQ(parse_element(z2, "e"), identity(z2));
  EXPECT_EQ(parse_element(z2, ""), identity(z2));
  EXPECT_EQ(parse_element(z2, "g1 g2"), lit(z2, "(1,1)"));
  EXPECT_THROW(parse_element(z2, "(1,2,3)"), ParseError);
  const GroupSpec aff = parse_group("affine");
  EXPECT_EQ(parse_element(aff, "(-2,1/8)"), parse_element(aff, "(-2,1/2^3)"));
  EXPECT_EQ(parse_element(aff, "x:(-2,1/8)"), parse_element(aff, "(-2,1/8)"));
  EXPECT_EQ(parse_element(aff, "y^-1:(-1,1/2)"), invert(aff, lit(aff, "(-1,1/2)")));
  EXPECT_THROW(parse_element(aff, "(0,1/3)"), ParseError);
}

TEST(Notation, FormatRoundTrips) {
  std::mt19937_64 rng(17);
  for (const auto& s : all_backends()) {
    for (int i = 0; i < 100; ++i) {
      const Elem a = random_element(s, rng);
      EXPECT_EQ(parse_element(s, format_element(s, a)), a) << format_element(s, a);
    }
  }
}

TEST(Dyadic, LowestTermsAndOrdering) {
  EXPECT_EQ(Dyadic(4, 3), Dyadic(1, 1));
  EXPECT_EQ(Dyadic(3, 2).to_string(), "3/2^2");
  EXPECT_EQ(Dyadic(6, 0).to_string(), "6");
  EXPECT_LT(Dyadic(1, 3), Dyadic(1, 2));
  EXPECT_EQ(Dyadic(1, 1) + Dyadic(1, 1), Dyadic(1));
  EXPECT_EQ(parse_dyadic("6/4"), Dyadic(3, 1));
}
