#pragma once

// Computable comparators on the group backends. Each oracle carries a
// declared order class; the label is a claim that the window checkers test,
// never an input the rest of the library relies on.

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orderlab/group.hpp"
#include "orderlab/notation.hpp"

namespace orderlab {

enum class Cmp : std::uint8_t { Less, Greater, Equal, Unrelated };

inline Cmp flip(Cmp c) {
  switch (c) {
    case Cmp::Less: return Cmp::Greater;
    case Cmp::Greater: return Cmp::Less;
    default: return c;
  }
}

inline const char* to_string(Cmp c) {
  switch (c) {
    case Cmp::Less: return "<";
    case Cmp::Greater: return ">";
    case Cmp::Equal: return "=";
    case Cmp::Unrelated: return "|";
  }
  return "?";
}

enum class AxiomClass : std::uint8_t { PartialOrder, TotalOrder, LeftInvariantTotal, BiInvariantTotal, LocallyInvariant, Conradian };

inline constexpr AxiomClass kAllClasses[] = {AxiomClass::PartialOrder,       AxiomClass::TotalOrder,       AxiomClass::LeftInvariantTotal,
                                             AxiomClass::BiInvariantTotal,   AxiomClass::LocallyInvariant, AxiomClass::Conradian};

inline const char* to_string(AxiomClass c) {
  switch (c) {
    case AxiomClass::PartialOrder: return "partial-order";
    case AxiomClass::TotalOrder: return "total-order";
    case AxiomClass::LeftInvariantTotal: return "left-invariant";
    case AxiomClass::BiInvariantTotal: return "bi-invariant";
    case AxiomClass::LocallyInvariant: return "locally-invariant";
    case AxiomClass::Conradian: return "conradian";
  }
  return "?";
}

inline AxiomClass parse_class(std::string_view s) {
  if (s == "partial-order" || s == "partial") return AxiomClass::PartialOrder;
  if (s == "total-order" || s == "total") return AxiomClass::TotalOrder;
  if (s == "left-invariant" || s == "left-invariant-total" || s == "left") return AxiomClass::LeftInvariantTotal;
  if (s == "bi-invariant" || s == "bi-invariant-total" || s == "bi") return AxiomClass::BiInvariantTotal;
  if (s == "locally-invariant" || s == "lio") return AxiomClass::LocallyInvariant;
  if (s == "conradian") return AxiomClass::Conradian;
  throw ParseError("unknown order class '" + std::string(s) + "'");
}

/// True for the classes whose relations leave no pair unrelated.
inline bool is_total(AxiomClass c) { return c != AxiomClass::PartialOrder && c != AxiomClass::LocallyInvariant; }

/// True for the classes that include left-invariance.
inline bool is_left_invariant(AxiomClass c) {
  return c == AxiomClass::LeftInvariantTotal || c == AxiomClass::BiInvariantTotal || c == AxiomClass::Conradian;
}

using Comparator = std::function<Cmp(const Elem&, const Elem&)>;

struct OrderOracle {
  GroupSpec spec;
  std::string id;
  AxiomClass declared = AxiomClass::TotalOrder;
  Comparator fn;

  Cmp compare(const Elem& a, const Elem& b) const {
    validate(spec, a);
    validate(spec, b);
    return fn(a, b);
  }
};

/// Same comparator under a different class label (used for negative controls).
inline OrderOracle relabeled(OrderOracle o, AxiomClass cls) {
  o.declared = cls;
  o.id += "@" + std::string(to_string(cls));
  return o;
}

// ---------------------------------------------------------------------------
// Lexicographic order on normal-form coordinates.

inline Cmp normal_form_lex_compare(const GroupSpec& spec, const Elem& x, const Elem& y) {
  validate(spec, x);
  validate(spec, y);
  auto lex = [](const std::vector<Int>& a, const std::vector<Int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return Cmp::Less;
      if (a[i] > b[i]) return Cmp::Greater;
    }
    return Cmp::Equal;
  };
  return std::visit(
      [&](const auto& g) -> Cmp {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, FreeAbelian> || std::is_same_v<T, Heisenberg> || std::is_same_v<T, KleinBottle>) {
          return lex(x.coords, y.coords);
        } else if constexpr (std::is_same_v<T, DirectProduct>) {
          for (std::size_t i = 0; i < g.factors.size(); ++i) {
            const Cmp c = normal_form_lex_compare(g.factors[i], x.factors[i], y.factors[i]);
            if (c != Cmp::Equal) return c;
          }
          return Cmp::Equal;
        } else {
          throw SpecMismatch("lex order is defined on abelian, heis, klein and their products, not " + to_string(spec));
        }
      },
      spec.kind);
}

namespace detail {

// Klein bottle coordinates give a left order only; everything else in the
// lex catalog is bi-invariant.
inline bool lex_is_bi_invariant(const GroupSpec& spec) {
  if (spec.is<KleinBottle>()) return false;
  if (spec.is<DirectProduct>()) {
    for (const auto& f : spec.as<DirectProduct>().factors) {
      if (!lex_is_bi_invariant(f)) return false;
    }
    return true;
  }
  if (spec.is<FreeAbelian>() || spec.is<Heisenberg>()) return true;
  throw SpecMismatch("lex order is defined on abelian, heis, klein and their products, not " + to_string(spec));
}

}  // namespace detail

inline OrderOracle lex_oracle(const GroupSpec& spec) {
  const AxiomClass cls = detail::lex_is_bi_invariant(spec) ? AxiomClass::BiInvariantTotal : AxiomClass::LeftInvariantTotal;
  return {spec, "lex", cls, [spec](const Elem& x, const Elem& y) { return normal_form_lex_compare(spec, x, y); }};
}

// ---------------------------------------------------------------------------
// Norm-induced locally invariant partial order on Z^n: x < y iff |x|^2 < |y|^2.

inline Int squared_norm(const Elem& x) {
  Int s = 0;
  for (const Int& c : x.coords) s += c * c;
  return s;
}

inline Cmp norm_lio_compare(const GroupSpec& spec, const Elem& x, const Elem& y) {
  if (!spec.is<FreeAbelian>()) throw SpecMismatch("norm order needs a free abelian group, got " + to_string(spec));
  validate(spec, x);
  validate(spec, y);
  if (x == y) return Cmp::Equal;
  const Int nx = squared_norm(x);
  const Int ny = squared_norm(y);
  if (nx < ny) return Cmp::Less;
  if (nx > ny) return Cmp::Greater;
  return Cmp::Unrelated;
}

inline OrderOracle norm_oracle(const GroupSpec& spec) {
  if (!spec.is<FreeAbelian>()) throw SpecMismatch("norm order needs a free abelian group, got " + to_string(spec));
  return {spec, "norm", AxiomClass::LocallyInvariant, [spec](const Elem& x, const Elem& y) { return norm_lio_compare(spec, x, y); }};
}

// ---------------------------------------------------------------------------
// Magnus expansion bi-order on free groups.
//
// g_i -> 1 + X_i, g_i^-1 -> 1 - X_i + X_i^2 - ...; elements are compared by
// the lowest-degree homogeneous part of M(x) - M(y). Within a degree the
// monomials are scanned from the last letter backwards, higher generator
// index first (so X_2 before X_1, X_1X_2 before X_2X_1); the first nonzero
// coefficient decides, positive meaning Greater.

namespace magnus {

using Monomial = std::vector<std::uint8_t>;
using Series = std::map<Monomial, std::int64_t>;

inline void add_to(Series& s, const Monomial& m, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = s.emplace(m, c);
  if (!inserted) {
    if (__builtin_add_overflow(it->second, c, &it->second)) throw Error("Magnus coefficient overflow");
    if (it->second == 0) s.erase(it);
  }
}

/// Truncated expansion of a reduced free-group word (letters +-(i+1)).
inline Series expand(const std::vector<Int>& letters, int degree) {
  Series s;
  s.emplace(Monomial{}, 1);
  for (const Int& c : letters) {
    const auto var = static_cast<std::uint8_t>(static_cast<int>(abs(c)) - 1);
    const bool inverse = c < 0;
    Series next;
    for (const auto& [m, coef] : s) {
      Monomial cur = m;
      std::int64_t sign = 1;
      for (int j = 0; static_cast<int>(m.size()) + j <= degree; ++j) {
        add_to(next, cur, sign * coef);
        if (!inverse && j == 1) break;
        cur.push_back(var);
        if (inverse) sign = -sign;
      }
    }
    s = std::move(next);
  }
  return s;
}

/// Position of a monomial in the within-degree scan order (smaller first).
inline Monomial scan_key(const Monomial& m, int rank) {
  Monomial key(m.rbegin(), m.rend());
  for (auto& v : key) v = static_cast<std::uint8_t>(rank - 1 - v);
  return key;
}

/// Sign and degree of the first nonzero coefficient of M(x) - M(y) up to
/// `degree`; (0, 0) when the truncations agree.
inline std::pair<int, int> leading_difference(const std::vector<Int>& x, const std::vector<Int>& y, int degree, int rank) {
  const Series sx = expand(x, degree);
  const Series sy = expand(y, degree);
  Series diff = sx;
  for (const auto& [m, c] : sy) add_to(diff, m, -c);
  int best_degree = -1;
  Monomial best_key;
  int best_sign = 0;
  for (const auto& [m, c] : diff) {
    const int d = static_cast<int>(m.size());
    Monomial key = scan_key(m, rank);
    if (best_degree < 0 || d < best_degree || (d == best_degree && key < best_key)) {
      best_degree = d;
      best_key = std::move(key);
      best_sign = c > 0 ? 1 : -1;
    }
  }
  if (best_degree < 0) return {0, 0};
  return {best_sign, best_degree};
}

}  // namespace magnus

inline Cmp magnus_compare(const GroupSpec& spec, const Elem& x, const Elem& y) {
  if (!spec.is<FreeGroup>()) throw SpecMismatch("Magnus order needs a free group, got " + to_string(spec));
  validate(spec, x);
  validate(spec, y);
  if (x == y) return Cmp::Equal;
  const int rank = spec.as<FreeGroup>().rank;
  const int bound = static_cast<int>(x.coords.size() + y.coords.size()) + 1;
  // Lower-degree differences are visible at every truncation, so grow the
  // truncation geometrically up to the bound.
  for (int degree = 2;; degree = std::min(2 * degree, bound)) {
    const auto [sign, at] = magnus::leading_difference(x.coords, y.coords, degree, rank);
    if (sign != 0) return sign > 0 ? Cmp::Greater : Cmp::Less;
    if (degree >= bound) break;
  }
  throw Error("Magnus expansions of distinct words agree up to degree " + std::to_string(bound));
}

inline OrderOracle magnus_oracle(const GroupSpec& spec) {
  if (!spec.is<FreeGroup>()) throw SpecMismatch("Magnus order needs a free group, got " + to_string(spec));
  return {spec, "magnus", AxiomClass::BiInvariantTotal, [spec](const Elem& x, const Elem& y) { return magnus_compare(spec, x, y); }};
}

// ---------------------------------------------------------------------------
// Dyadic affine group orders.

/// Dynamical left order: compare images of the basepoint 0, then slopes.
inline Cmp affine_dynamical_compare(const GroupSpec& spec, const Elem& x, const Elem& y) {
  if (!spec.is<DyadicAffine>()) throw SpecMismatch("affine orders need the dyadic affine group, got " + to_string(spec));
  validate(spec, x);
  validate(spec, y);
  const auto c = detail::dyadic_part(x) <=> detail::dyadic_part(y);
  if (c < 0) return Cmp::Less;
  if (c > 0) return Cmp::Greater;
  if (x.coords[0] < y.coords[0]) return Cmp::Less;
  if (x.coords[0] > y.coords[0]) return Cmp::Greater;
  return Cmp::Equal;
}

/// Bi-invariant order with positive cone {k > 0} u {k = 0, d > 0}.
inline Cmp affine_bi_compare(const GroupSpec& spec, const Elem& x, const Elem& y) {
  if (!spec.is<DyadicAffine>()) throw SpecMismatch("affine orders need the dyadic affine group, got " + to_string(spec));
  validate(spec, x);
  validate(spec, y);
  if (x.coords[0] < y.coords[0]) return Cmp::Less;
  if (x.coords[0] > y.coords[0]) return Cmp::Greater;
  const auto c = detail::dyadic_part(x) <=> detail::dyadic_part(y);
  if (c < 0) return Cmp::Less;
  if (c > 0) return Cmp::Greater;
  return Cmp::Equal;
}

inline OrderOracle affine_dynamical_oracle(const GroupSpec& spec) {
  if (!spec.is<DyadicAffine>()) throw SpecMismatch("affine orders need the dyadic affine group, got " + to_string(spec));
  return {spec, "affine-dyn", AxiomClass::LeftInvariantTotal,
          [spec](const Elem& x, const Elem& y) { return affine_dynamical_compare(spec, x, y); }};
}

inline OrderOracle affine_bi_oracle(const GroupSpec& spec) {
  if (!spec.is<DyadicAffine>()) throw SpecMismatch("affine orders need the dyadic affine group, got " + to_string(spec));
  return {spec, "affine-bi", AxiomClass::BiInvariantTotal, [spec](const Elem& x, const Elem& y) { return affine_bi_compare(spec, x, y); }};
}

// ---------------------------------------------------------------------------
// Positive cones.

struct Cone {
  GroupSpec spec;
  std::string id;
  std::function<bool(const Elem&)> contains;
};

/// P = {x : x > e}
inline Cone order_to_cone(const OrderOracle& oracle) {
  const Elem e = identity(oracle.spec);
  return {oracle.spec, "cone(" + oracle.id + ")", [oracle, e](const Elem& x) { return oracle.compare(x, e) == Cmp::Greater; }};
}

/// x < y iff x^-1 y in P. Pairs with neither x^-1 y nor y^-1 x in P are
/// reported Unrelated, so a cone that is not total shows up in the checkers.
inline OrderOracle cone_to_order(const Cone& cone) {
  const GroupSpec spec = cone.spec;
  return {spec, "order(" + cone.id + ")", AxiomClass::LeftInvariantTotal, [spec, cone](const Elem& x, const Elem& y) {
            if (x == y) return Cmp::Equal;
            if (cone.contains(multiply(spec, invert(spec, x), y))) return Cmp::Less;
            if (cone.contains(multiply(spec, invert(spec, y), x))) return Cmp::Greater;
            return Cmp::Unrelated;
          }};
}

/// Lexicographic half-space cone on Z^n: x is positive when the first
/// nonzero value among <v_1,x>, <v_2,x>, ... is positive.
inline Cone halfspace_cone(const GroupSpec& spec, std::vector<Elem> normals) {
  if (!spec.is<FreeAbelian>()) throw SpecMismatch("half-space cones need a free abelian group, got " + to_string(spec));
  for (const auto& v : normals) validate(spec, v);
  return {spec, "halfspace", [normals = std::move(normals)](const Elem& x) {
            for (const auto& v : normals) {
              Int dot = 0;
              for (std::size_t i = 0; i < v.coords.size(); ++i) dot += v.coords[i] * x.coords[i];
              if (dot != 0) return dot > 0;
            }
            return false;
          }};
}

/// Reads one element per line; blank lines and '#' comments are skipped.
inline std::vector<std::string> read_element_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto t = detail::trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

/// Oracle from its CLI name: lex, norm, magnus, affine-dyn, affine-bi,
/// cone:<file> (half-space normals, one element per line).
inline OrderOracle parse_oracle(const GroupSpec& spec, std::string_view text) {
  if (text == "lex") return lex_oracle(spec);
  if (text == "norm") return norm_oracle(spec);
  if (text == "magnus") return magnus_oracle(spec);
  if (text == "affine-dyn") return affine_dynamical_oracle(spec);
  if (text == "affine-bi") return affine_bi_oracle(spec);
  if (text.rfind("cone:", 0) == 0) {
    const std::string path(text.substr(5));
    std::vector<Elem> normals;
    for (const auto& line : read_element_lines(path)) normals.push_back(parse_element(spec, line));
    OrderOracle o = cone_to_order(halfspace_cone(spec, std::move(normals)));
    o.id = std::string(text);
    return o;
  }
  throw ParseError("unknown oracle '" + std::string(text) + "'");
}

}  // namespace orderlab
