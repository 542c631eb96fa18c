#pragma once

// Independent oracles for the test suite. Nothing here reuses the clause
// machinery or the truncated Magnus series of the library: axioms are
// evaluated straight from their definitions and expansions are dense.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "orderlab/search.hpp"

namespace testing_support {

using namespace orderlab;

inline std::vector<GroupSpec> all_backends() {
  return {GroupSpec::free_abelian(1), GroupSpec::free_abelian(3), parse_group("heis"),    GroupSpec::free_group(2),
          parse_group("klein"),       GroupSpec::cyclic(5),       parse_group("affine"), parse_group("abelian:1*free:2*cyclic:3")};
}

/// Random element as a word of length 0..max_len.
inline Elem random_element(const GroupSpec& spec, std::mt19937_64& rng, int max_len = 6) {
  const int gens = generator_count(spec);
  Word w;
  const int len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_len + 1));
  for (int i = 0; i < len; ++i) w.push_back({static_cast<int>(rng() % static_cast<std::uint64_t>(gens)), rng() % 2 ? 1 : -1});
  return evaluate(spec, w);
}

// ---------------------------------------------------------------------------
// Brute-force enumeration of window relations with direct axiom evaluation.

enum class S { Lt, Gt, Un };

struct Table {
  std::size_t n;
  std::vector<S> upper;  // pairs i < j, row-major
  S at(std::size_t i, std::size_t j) const {
    std::size_t k = 0;
    const std::size_t a = std::min(i, j), b = std::max(i, j);
    for (std::size_t r = 0; r < a; ++r) k += n - r - 1;
    k += b - a - 1;
    const S s = upper[k];
    if (i < j || s == S::Un) return s;
    return s == S::Lt ? S::Gt : S::Lt;
  }
  bool lt(std::size_t i, std::size_t j) const { return i != j && at(i, j) == S::Lt; }
};

inline bool satisfies(const Window& w, const Table& t, AxiomClass cls) {
  const GroupSpec& spec = w.spec();
  const std::size_t n = w.size();
  const Elem e = identity(spec);
  auto idx = [&](const Elem& x) { return w.find(x); };
  // transitivity
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (x != z && t.lt(x, y) && t.lt(y, z) && !t.lt(x, z)) return false;
  const bool total = cls != AxiomClass::PartialOrder && cls != AxiomClass::LocallyInvariant;
  if (total) {
    for (auto s : t.upper)
      if (s == S::Un) return false;
  }
  const bool left = cls == AxiomClass::LeftInvariantTotal || cls == AxiomClass::BiInvariantTotal || cls == AxiomClass::Conradian;
  const bool right = cls == AxiomClass::BiInvariantTotal;
  for (std::size_t z = 0; z < n && (left || right); ++z) {
    if (w[z] == e) continue;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y || !t.lt(x, y)) continue;
        if (left) {
          const auto zx = idx(multiply(spec, w[z], w[x])), zy = idx(multiply(spec, w[z], w[y]));
          if (zx && zy && !t.lt(*zx, *zy)) return false;
        }
        if (right) {
          const auto xz = idx(multiply(spec, w[x], w[z])), yz = idx(multiply(spec, w[y], w[z]));
          if (xz && yz && !t.lt(*xz, *yz)) return false;
        }
      }
  }
  if (cls == AxiomClass::LocallyInvariant) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (w[y] == e) continue;
        const auto a = idx(multiply(spec, w[x], w[y])), b = idx(multiply(spec, w[x], invert(spec, w[y])));
        if (a && b && !t.lt(x, *a) && !t.lt(x, *b)) return false;
      }
  }
  if (cls == AxiomClass::Conradian) {
    const auto ei = idx(e);
    if (ei) {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (x == *ei || y == *ei) continue;
          const auto xyy = idx(multiply(spec, w[x], multiply(spec, w[y], w[y])));
          if (xyy && t.lt(*ei, x) && t.lt(*ei, y) && !t.lt(y, *xyy)) return false;
        }
    }
  }
  return true;
}

/// Every satisfying assignment, in odometer order over the upper triangle.
inline std::vector<Table> brute_force(const Window& w, AxiomClass cls) {
  const bool total = cls != AxiomClass::PartialOrder && cls != AxiomClass::LocallyInvariant;
  const std::size_t n = w.size();
  const std::size_t pairs = n * (n ? n - 1 : 0) / 2;
  const std::size_t states = total ? 2 : 3;
  std::vector<Table> out;
  Table t{n, std::vector<S>(pairs, S::Lt)};
  std::vector<std::size_t> digit(pairs, 0);
  while (true) {
    for (std::size_t k = 0; k < pairs; ++k) t.upper[k] = static_cast<S>(digit[k]);
    if (satisfies(w, t, cls)) out.push_back(t);
    std::size_t k = 0;
    while (k < pairs && ++digit[k] == states) digit[k++] = 0;
    if (k == pairs) break;
  }
  return out;
}

inline std::vector<S> as_states(const WindowRelation& r) {
  std::vector<S> out;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      const Entry e = r.entry(i, j);
      out.push_back(e == Entry::Less ? S::Lt : e == Entry::Greater ? S::Gt : S::Un);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Dense Magnus expansion: full noncommutative polynomials, exact integers.

using BigInt = boost::multiprecision::cpp_int;
using Poly = std::map<std::vector<int>, BigInt>;

inline Poly poly_mul(const Poly& a, const Poly& b, int degree) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      if (static_cast<int>(ma.size() + mb.size()) > degree) continue;
      std::vector<int> m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out[m] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// Image of a letter (gen, sign) truncated at `degree`.
inline Poly letter_poly(int gen, int sign, int degree) {
  Poly p{{{}, 1}};
  if (sign > 0) {
    p[{gen}] = 1;
    return p;
  }
  std::vector<int> m;
  for (int d = 1; d <= degree; ++d) {
    m.push_back(gen);
    p[m] = d % 2 ? -1 : 1;
  }
  return p;
}

inline Poly dense_expand(const Word& w, int degree) {
  Poly p{{{}, 1}};
  for (const auto& l : w) p = poly_mul(p, letter_poly(l.gen, l.sign, degree), degree);
  return p;
}

/// All monomials of one degree, listed in the documented scan order:
/// compare last letters first, the larger generator index first.
inline std::vector<std::vector<int>> scan_order(int rank, int degree) {
  std::vector<std::vector<int>> all{{}};
  for (int d = 0; d < degree; ++d) {
    std::vector<std::vector<int>> next;
    for (const auto& m : all)
      for (int g = 0; g < rank; ++g) {
        auto c = m;
        c.push_back(g);
        next.push_back(c);
      }
    all = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  });
  return all;
}

/// Dense comparison of two words of a rank-`rank` free group.
inline Cmp dense_magnus_compare(int rank, const Word& x, const Word& y) {
  const int degree = static_cast<int>(x.size() + y.size()) + 1;
  const Poly px = dense_expand(x, degree), py = dense_expand(y, degree);
  for (int d = 1; d <= degree; ++d) {
    for (const auto& m : scan_order(rank, d)) {
      BigInt diff = 0;
      if (auto it = px.find(m); it != px.end()) diff += it->second;
      if (auto it = py.find(m); it != py.end()) diff -= it->second;
      if (diff != 0) return diff > 0 ? Cmp::Greater : Cmp::Less;
    }
  }
  return Cmp::Equal;
}

/// Naive free reduction by repeated cancellation passes.
inline Word naive_reduce(Word w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

/// All reduced words of length <= len over `rank` generators.
inline std::vector<Word> reduced_words(int rank, int len) {
  std::vector<Word> out{{}};
  std::vector<Word> frontier{{}};
  for (int l = 0; l < len; ++l) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (int g = 0; g < rank; ++g)
        for (int s : {1, -1}) {
          if (!w.empty() && w.back().gen == g && w.back().sign == -s) continue;
          auto c = w;
          c.push_back({g, s});
          next.push_back(c);
        }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace testing_support
