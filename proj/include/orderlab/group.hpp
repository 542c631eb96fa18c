#pragma once

// Exact arithmetic for the fixed catalog of finitely generated groups:
// free abelian Z^n, the integer Heisenberg group, free groups F_k, the Klein
// bottle group <x, y | x y x^-1 = y^-1>, finite cyclic groups, the dyadic
// affine group {t -> 2^k t + d} ~ BS(1,2), and direct products of these.
//
// Every element has a unique normal form (Elem), so equality of elements is
// equality of encodings.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orderlab/dyadic.hpp"
#include "orderlab/error.hpp"

namespace orderlab {

struct FreeAbelian {
  int rank = 1;
};
struct Heisenberg {};
struct FreeGroup {
  int rank = 2;
};
struct KleinBottle {};
struct CyclicFinite {
  std::int64_t order = 2;
};
struct DyadicAffine {};

struct GroupSpec;
struct DirectProduct {
  std::vector<GroupSpec> factors;
};

struct GroupSpec {
  using Kind = std::variant<FreeAbelian, Heisenberg, FreeGroup, KleinBottle, CyclicFinite, DyadicAffine, DirectProduct>;
  Kind kind;

  static GroupSpec free_abelian(int rank) {
    if (rank < 1) throw PreconditionError("free abelian rank must be >= 1");
    return {FreeAbelian{rank}};
  }
  static GroupSpec heisenberg() { return {Heisenberg{}}; }
  static GroupSpec free_group(int rank) {
    if (rank < 1) throw PreconditionError("free group rank must be >= 1");
    return {FreeGroup{rank}};
  }
  static GroupSpec klein_bottle() { return {KleinBottle{}}; }
  static GroupSpec cyclic(std::int64_t order) {
    if (order < 2) throw PreconditionError("cyclic order must be >= 2");
    return {CyclicFinite{order}};
  }
  static GroupSpec dyadic_affine() { return {DyadicAffine{}}; }
  static GroupSpec product(std::vector<GroupSpec> factors) {
    if (factors.empty()) throw PreconditionError("direct product needs at least one factor");
    return {DirectProduct{std::move(factors)}};
  }

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(kind);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(kind);
  }
};

inline bool operator==(const GroupSpec& a, const GroupSpec& b);

namespace detail {
inline bool same_kind(const FreeAbelian& a, const FreeAbelian& b) { return a.rank == b.rank; }
inline bool same_kind(const FreeGroup& a, const FreeGroup& b) { return a.rank == b.rank; }
inline bool same_kind(const CyclicFinite& a, const CyclicFinite& b) { return a.order == b.order; }
inline bool same_kind(const DirectProduct& a, const DirectProduct& b) { return a.factors == b.factors; }
template <class T>
bool same_kind(const T&, const T&) {
  return true;
}
}  // namespace detail

inline bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.kind.index() != b.kind.index()) return false;
  return std::visit(
      [&](const auto& ka) {
        using T = std::decay_t<decltype(ka)>;
        return detail::same_kind(ka, std::get<T>(b.kind));
      },
      a.kind);
}

/// Canonical group string, e.g. "abelian:2", "heis", "free:2", "klein",
/// "cyclic:3", "affine", "abelian:1*cyclic:2".
inline std::string to_string(const GroupSpec& spec) {
  struct V {
    std::string operator()(const FreeAbelian& g) const { return "abelian:" + std::to_string(g.rank); }
    std::string operator()(const Heisenberg&) const { return "heis"; }
    std::string operator()(const FreeGroup& g) const { return "free:" + std::to_string(g.rank); }
    std::string operator()(const KleinBottle&) const { return "klein"; }
    std::string operator()(const CyclicFinite& g) const { return "cyclic:" + std::to_string(g.order); }
    std::string operator()(const DyadicAffine&) const { return "affine"; }
    std::string operator()(const DirectProduct& g) const {
      std::string out;
      for (std::size_t i = 0; i < g.factors.size(); ++i) {
        if (i) out += '*';
        const bool nested = g.factors[i].is<DirectProduct>();
        out += nested ? "(" + to_string(g.factors[i]) + ")" : to_string(g.factors[i]);
      }
      return out;
    }
  };
  return std::visit(V{}, spec.kind);
}

/// Normal form of a group element. Leaf backends use `coords`:
///   FreeAbelian  integer vector
///   Heisenberg   (a, b, c) for the matrix [[1,a,c],[0,1,b],[0,0,1]]
///   FreeGroup    freely reduced letters, +i / -i for generator i (1-based)
///   KleinBottle  (m, n) meaning x^m y^n
///   CyclicFinite residue in [0, k)
///   DyadicAffine (k, num, exp): t -> 2^k t + num/2^exp, dyadic in lowest terms
/// DirectProduct elements use `factors`, one per factor.
struct Elem {
  std::vector<Int> coords;
  std::vector<Elem> factors;

  friend bool operator==(const Elem& a, const Elem& b) { return a.coords == b.coords && a.factors == b.factors; }
  friend bool operator<(const Elem& a, const Elem& b) {
    if (a.coords != b.coords) return a.coords < b.coords;
    return std::lexicographical_compare(a.factors.begin(), a.factors.end(), b.factors.begin(), b.factors.end());
  }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }
};

/// One letter of a word: generator index (0-based) and exponent sign.
struct Letter {
  int gen = 0;
  int sign = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

inline int generator_count(const GroupSpec& spec) {
  struct V {
    int operator()(const FreeAbelian& g) const { return g.rank; }
    int operator()(const Heisenberg&) const { return 2; }
    int operator()(const FreeGroup& g) const { return g.rank; }
    int operator()(const KleinBottle&) const { return 2; }
    int operator()(const CyclicFinite&) const { return 1; }
    int operator()(const DyadicAffine&) const { return 2; }
    int operator()(const DirectProduct& g) const {
      int n = 0;
      for (const auto& f : g.factors) n += generator_count(f);
      return n;
    }
  };
  return std::visit(V{}, spec.kind);
}

inline Elem identity(const GroupSpec& spec) {
  struct V {
    Elem operator()(const FreeAbelian& g) const { return {std::vector<Int>(static_cast<std::size_t>(g.rank), Int(0)), {}}; }
    Elem operator()(const Heisenberg&) const { return {{0, 0, 0}, {}}; }
    Elem operator()(const FreeGroup&) const { return {}; }
    Elem operator()(const KleinBottle&) const { return {{0, 0}, {}}; }
    Elem operator()(const CyclicFinite&) const { return {{0}, {}}; }
    Elem operator()(const DyadicAffine&) const { return {{0, 0, 0}, {}}; }
    Elem operator()(const DirectProduct& g) const {
      Elem e;
      for (const auto& f : g.factors) e.factors.push_back(identity(f));
      return e;
    }
  };
  return std::visit(V{}, spec.kind);
}

inline bool is_identity(const GroupSpec& spec, const Elem& a) { return a == identity(spec); }

namespace detail {

inline std::int64_t small(const Int& v) {
  if (v > Int(INT64_MAX) || v < Int(INT64_MIN)) throw Error("integer out of machine range: " + v.str());
  return static_cast<std::int64_t>(v);
}

inline Dyadic dyadic_part(const Elem& a) { return Dyadic(a.coords[1], small(a.coords[2])); }

inline Elem make_affine(const Int& k, const Dyadic& d) { return {{k, d.num(), Int(d.exp())}, {}}; }

inline bool odd(const Int& v) { return bit_test(abs(Int(v)), 0); }

}  // namespace detail

/// Throws SpecMismatch unless `a` is a valid normal form for `spec`.
inline void validate(const GroupSpec& spec, const Elem& a) {
  auto fail = [&](const std::string& why) { throw SpecMismatch("element is not a " + to_string(spec) + " normal form: " + why); };
  auto leaf = [&](std::size_t n) {
    if (!a.factors.empty()) fail("unexpected product components");
    if (a.coords.size() != n) fail("expected " + std::to_string(n) + " coordinates, got " + std::to_string(a.coords.size()));
  };
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, FreeAbelian>) {
          leaf(static_cast<std::size_t>(g.rank));
        } else if constexpr (std::is_same_v<T, Heisenberg>) {
          leaf(3);
        } else if constexpr (std::is_same_v<T, FreeGroup>) {
          if (!a.factors.empty()) fail("unexpected product components");
          for (std::size_t i = 0; i < a.coords.size(); ++i) {
            const Int& c = a.coords[i];
            if (c == 0 || abs(c) > g.rank) fail("letter out of range");
            if (i > 0 && a.coords[i - 1] == -c) fail("word not freely reduced");
          }
        } else if constexpr (std::is_same_v<T, KleinBottle>) {
          leaf(2);
        } else if constexpr (std::is_same_v<T, CyclicFinite>) {
          leaf(1);
          if (a.coords[0] < 0 || a.coords[0] >= g.order) fail("residue out of range");
        } else if constexpr (std::is_same_v<T, DyadicAffine>) {
          leaf(3);
          const Int& num = a.coords[1];
          const Int& exp = a.coords[2];
          if (exp < 0) fail("negative dyadic exponent");
          if (num == 0 && exp != 0) fail("zero dyadic with nonzero exponent");
          if (exp > 0 && !detail::odd(num)) fail("dyadic not in lowest terms");
        } else {
          if (!a.coords.empty() || a.factors.size() != g.factors.size()) fail("wrong number of product components");
          for (std::size_t i = 0; i < g.factors.size(); ++i) validate(g.factors[i], a.factors[i]);
        }
      },
      spec.kind);
}

inline Elem multiply(const GroupSpec& spec, const Elem& a, const Elem& b) {
  validate(spec, a);
  validate(spec, b);
  return std::visit(
      [&](const auto& g) -> Elem {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, FreeAbelian>) {
          Elem r = a;
          for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
          return r;
        } else if constexpr (std::is_same_v<T, Heisenberg>) {
          // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
          return {{a.coords[0] + b.coords[0], a.coords[1] + b.coords[1], a.coords[2] + b.coords[2] + a.coords[0] * b.coords[1]}, {}};
        } else if constexpr (std::is_same_v<T, FreeGroup>) {
          Elem r = a;
          for (const Int& c : b.coords) {
            if (!r.coords.empty() && r.coords.back() == -c) {
              r.coords.pop_back();
            } else {
              r.coords.push_back(c);
            }
          }
          return r;
        } else if constexpr (std::is_same_v<T, KleinBottle>) {
          // (m,n)(m',n') = (m+m', (-1)^m' n + n')
          const Int n = detail::odd(b.coords[0]) ? Int(-a.coords[1]) : a.coords[1];
          return {{a.coords[0] + b.coords[0], n + b.coords[1]}, {}};
        } else if constexpr (std::is_same_v<T, CyclicFinite>) {
          Int r = (a.coords[0] + b.coords[0]) % g.order;
          return {{r}, {}};
        } else if constexpr (std::is_same_v<T, DyadicAffine>) {
          // (k,d)(k',d') = (k+k', 2^k d' + d): composition a o b
          const Dyadic d = detail::dyadic_part(b).scaled(detail::small(a.coords[0])) + detail::dyadic_part(a);
          return detail::make_affine(a.coords[0] + b.coords[0], d);
        } else {
          Elem r;
          for (std::size_t i = 0; i < g.factors.size(); ++i) r.factors.push_back(multiply(g.factors[i], a.factors[i], b.factors[i]));
          return r;
        }
      },
      spec.kind);
}

inline Elem invert(const GroupSpec& spec, const Elem& a) {
  validate(spec, a);
  return std::visit(
      [&](const auto& g) -> Elem {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, FreeAbelian>) {
          Elem r = a;
          for (auto& c : r.coords) c = -c;
          return r;
        } else if constexpr (std::is_same_v<T, Heisenberg>) {
          return {{-a.coords[0], -a.coords[1], a.coords[0] * a.coords[1] - a.coords[2]}, {}};
        } else if constexpr (std::is_same_v<T, FreeGroup>) {
          Elem r;
          for (auto it = a.coords.rbegin(); it != a.coords.rend(); ++it) r.coords.push_back(-*it);
          return r;
        } else if constexpr (std::is_same_v<T, KleinBottle>) {
          const Int n = detail::odd(a.coords[0]) ? a.coords[1] : Int(-a.coords[1]);
          return {{-a.coords[0], n}, {}};
        } else if constexpr (std::is_same_v<T, CyclicFinite>) {
          return {{(g.order - a.coords[0]) % g.order}, {}};
        } else if constexpr (std::is_same_v<T, DyadicAffine>) {
          const std::int64_t k = detail::small(a.coords[0]);
          return detail::make_affine(-a.coords[0], (-detail::dyadic_part(a)).scaled(-k));
        } else {
          Elem r;
          for (std::size_t i = 0; i < g.factors.size(); ++i) r.factors.push_back(invert(g.factors[i], a.factors[i]));
          return r;
        }
      },
      spec.kind);
}

/// a^n for any integer n, by repeated squaring.
inline Elem power(const GroupSpec& spec, const Elem& a, std::int64_t n) {
  Elem base = n < 0 ? invert(spec, a) : a;
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  Elem result = identity(spec);
  while (m) {
    if (m & 1) result = multiply(spec, result, base);
    m >>= 1;
    if (m) base = multiply(spec, base, base);
  }
  return result;
}

/// x^h = h^-1 x h
inline Elem conjugate(const GroupSpec& spec, const Elem& x, const Elem& h) {
  return multiply(spec, multiply(spec, invert(spec, h), x), h);
}

/// [x,h] = x^-1 h^-1 x h = x^-1 x^h
inline Elem commutator(const GroupSpec& spec, const Elem& x, const Elem& h) {
  return multiply(spec, invert(spec, x), conjugate(spec, x, h));
}

/// Generator `index` (0-based) of the fixed generating set. Direct products
/// list the generators of each factor in factor order.
inline Elem generator(const GroupSpec& spec, int index) {
  if (index < 0 || index >= generator_count(spec)) {
    throw PreconditionError("generator index " + std::to_string(index + 1) + " out of range for " + to_string(spec));
  }
  return std::visit(
      [&](const auto& g) -> Elem {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, FreeAbelian>) {
          Elem r = identity(spec);
          r.coords[static_cast<std::size_t>(index)] = 1;
          return r;
        } else if constexpr (std::is_same_v<T, Heisenberg>) {
          return index == 0 ? Elem{{1, 0, 0}, {}} : Elem{{0, 1, 0}, {}};
        } else if constexpr (std::is_same_v<T, FreeGroup>) {
          return {{Int(index + 1)}, {}};
        } else if constexpr (std::is_same_v<T, KleinBottle>) {
          return index == 0 ? Elem{{1, 0}, {}} : Elem{{0, 1}, {}};
        } else if constexpr (std::is_same_v<T, CyclicFinite>) {
          return {{Int(1) % g.order}, {}};
        } else if constexpr (std::is_same_v<T, DyadicAffine>) {
          // t -> 2t and t -> t + 1
          return index == 0 ? Elem{{1, 0, 0}, {}} : Elem{{0, 1, 0}, {}};
        } else {
          Elem r = identity(spec);
          int offset = 0;
          for (std::size_t i = 0; i < g.factors.size(); ++i) {
            const int n = generator_count(g.factors[i]);
            if (index < offset + n) {
              r.factors[i] = generator(g.factors[i], index - offset);
              break;
            }
            offset += n;
          }
          return r;
        }
      },
      spec.kind);
}

inline std::vector<Elem> generators(const GroupSpec& spec) {
  std::vector<Elem> out;
  for (int i = 0; i < generator_count(spec); ++i) out.push_back(generator(spec, i));
  return out;
}

/// Product of the letters of `w` in order; the empty word is e.
inline Elem evaluate(const GroupSpec& spec, const Word& w) {
  const int n = generator_count(spec);
  Elem r = identity(spec);
  for (const auto& l : w) {
    if (l.gen < 0 || l.gen >= n) throw PreconditionError("generator g" + std::to_string(l.gen + 1) + " not in " + to_string(spec));
    if (l.sign != 1 && l.sign != -1) throw PreconditionError("letter exponent must be +1 or -1");
    const Elem g = generator(spec, l.gen);
    r = multiply(spec, r, l.sign > 0 ? g : invert(spec, g));
  }
  return r;
}

/// Checks x^(h^n) = x^h [x,h]^h [x,h]^(h^2) ... [x,h]^(h^(n-1)).
/// Holds in every group; false means the arithmetic is broken.
inline bool telescope_identity_check(const GroupSpec& spec, const Elem& x, const Elem& h, std::int64_t n) {
  if (n < 1) throw PreconditionError("telescoping identity needs n >= 1");
  const Elem lhs = conjugate(spec, x, power(spec, h, n));
  const Elem c = commutator(spec, x, h);
  Elem rhs = conjugate(spec, x, h);
  Elem hp = h;
  for (std::int64_t i = 1; i < n; ++i) {
    rhs = multiply(spec, rhs, conjugate(spec, c, hp));
    hp = multiply(spec, hp, h);
  }
  return lhs == rhs;
}

/// Elements of the Cayley ball in canonical order (shortest-word length,
/// then normal form), each with the first shortest word found.
struct BallEnumeration {
  std::vector<Elem> elems;
  std::vector<Word> words;
  std::vector<int> lengths;
};

inline constexpr std::size_t kDefaultBallCap = 100000;

inline BallEnumeration enumerate_ball(const GroupSpec& spec, int radius, std::size_t cap = kDefaultBallCap) {
  if (radius < 0) throw PreconditionError("ball radius must be >= 0");
  std::vector<std::pair<Elem, Letter>> steps;
  for (int i = 0; i < generator_count(spec); ++i) {
    const Elem g = generator(spec, i);
    steps.push_back({g, Letter{i, 1}});
    steps.push_back({invert(spec, g), Letter{i, -1}});
  }
  BallEnumeration out;
  std::map<Elem, std::size_t> seen;
  out.elems.push_back(identity(spec));
  out.words.emplace_back();
  out.lengths.push_back(0);
  seen.emplace(out.elems.front(), 0);
  std::size_t layer_begin = 0;
  for (int d = 1; d <= radius; ++d) {
    const std::size_t layer_end = out.elems.size();
    std::map<Elem, Word> layer;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& [g, letter] : steps) {
        Elem next = multiply(spec, out.elems[i], g);
        if (seen.count(next) || layer.count(next)) continue;
        Word w = out.words[i];
        w.push_back(letter);
        layer.emplace(std::move(next), std::move(w));
        if (seen.size() + layer.size() > cap) {
          throw SizeCapExceeded("ball of radius " + std::to_string(radius) + " in " + to_string(spec) + " exceeds " +
                                std::to_string(cap) + " elements");
        }
      }
    }
    if (layer.empty()) break;
    layer_begin = layer_end;
    for (auto& [e, w] : layer) {
      seen.emplace(e, out.elems.size());
      out.elems.push_back(e);
      out.words.push_back(std::move(w));
      out.lengths.push_back(d);
    }
  }
  return out;
}

}  // namespace orderlab
