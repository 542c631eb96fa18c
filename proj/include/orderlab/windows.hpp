#pragma once

// Finite windows of a group, relations restricted to them, and the
// window-relative axiom instances of each order class.
//
// An axiom instance is evaluated only when every element it mentions lies in
// the window. Each instance is a clause: a disjunction of literals of the form
// "entry(i,j) is one of S". A relation violates an instance when every literal
// is definitely false; Undecided entries never make a literal false.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "orderlab/group.hpp"
#include "orderlab/notation.hpp"
#include "orderlab/oracles.hpp"

namespace orderlab {

class DuplicateElement : public Error {
 public:
  DuplicateElement(std::size_t first, std::size_t second, const std::string& label)
      : Error("window elements " + std::to_string(first) + " and " + std::to_string(second) + " are both '" + label + "'"),
        first_index(first),
        second_index(second) {}
  std::size_t first_index;
  std::size_t second_index;
};

class Window {
 public:
  /// Explicit window in the given order. Labels default to the element
  /// literal; lengths (used to order search variables) default to 0 for e
  /// and 1 otherwise.
  Window(GroupSpec spec, std::vector<Elem> elems, std::vector<std::string> labels = {}, std::vector<int> lengths = {})
      : spec_(std::move(spec)), elems_(std::move(elems)), labels_(std::move(labels)), lengths_(std::move(lengths)) {
    const Elem e = identity(spec_);
    if (labels_.empty()) {
      for (const auto& x : elems_) labels_.push_back(x == e ? "e" : format_element(spec_, x));
    }
    if (lengths_.empty()) {
      for (const auto& x : elems_) lengths_.push_back(x == e ? 0 : 1);
    }
    if (labels_.size() != elems_.size() || lengths_.size() != elems_.size()) throw Error("window labels/lengths size mismatch");
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      validate(spec_, elems_[i]);
      auto [it, inserted] = index_.emplace(elems_[i], i);
      if (!inserted) throw DuplicateElement(it->second, i, labels_[i]);
    }
    identity_index_ = find(e);
  }

  const GroupSpec& spec() const { return spec_; }
  std::size_t size() const { return elems_.size(); }
  const Elem& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Elem>& elems() const { return elems_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int length(std::size_t i) const { return lengths_[i]; }

  std::optional<std::size_t> find(const Elem& x) const {
    const auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Elem& x) const { return index_.count(x) > 0; }
  bool contains_identity() const { return identity_index_.has_value(); }
  std::optional<std::size_t> identity_index() const { return identity_index_; }

  /// True when every element of this window lies in `other`.
  bool subset_of(const Window& other) const {
    if (!(spec_ == other.spec_)) return false;
    return std::all_of(elems_.begin(), elems_.end(), [&](const Elem& x) { return other.contains(x); });
  }

 private:
  GroupSpec spec_;
  std::vector<Elem> elems_;
  std::vector<std::string> labels_;
  std::vector<int> lengths_;
  std::map<Elem, std::size_t> index_;
  std::optional<std::size_t> identity_index_;
};

/// Cayley ball as a window: canonical order, labels are shortest words.
inline Window ball(const GroupSpec& spec, int radius, std::size_t cap = kDefaultBallCap) {
  BallEnumeration b = enumerate_ball(spec, radius, cap);
  std::vector<std::string> labels;
  for (const auto& w : b.words) labels.push_back(format_word(spec, w));
  return Window(spec, std::move(b.elems), std::move(labels), std::move(b.lengths));
}

/// Window from element strings (word or literal syntax), in input order,
/// with e prepended if absent. Duplicates raise DuplicateElement with
/// their input positions.
inline Window build_window(const GroupSpec& spec, const std::vector<std::string>& texts) {
  std::vector<Elem> elems;
  std::vector<std::string> labels;
  std::vector<int> lengths;
  std::map<Elem, std::size_t> seen;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    Elem x = parse_element(spec, texts[i]);
    auto [it, inserted] = seen.emplace(x, i);
    if (!inserted) throw DuplicateElement(it->second, i, std::string(detail::trim(texts[i])));
    const std::string_view t = detail::trim(texts[i]);
    const bool literal = t.find(':') != std::string_view::npos || (!t.empty() && (t.front() == '(' || t.front() == '-' || std::isdigit(static_cast<unsigned char>(t.front()))));
    lengths.push_back(is_identity(spec, x) ? 0 : literal ? 1 : static_cast<int>(parse_word(spec, t).size()));
    labels.emplace_back(t.empty() ? "e" : t);
    elems.push_back(std::move(x));
  }
  const Elem e = identity(spec);
  if (!seen.count(e)) {
    elems.insert(elems.begin(), e);
    labels.insert(labels.begin(), "e");
    lengths.insert(lengths.begin(), 0);
  }
  return Window(spec, std::move(elems), std::move(labels), std::move(lengths));
}

inline Window build_window_from_words(const GroupSpec& spec, const std::vector<Word>& words) {
  std::vector<std::string> texts;
  for (const auto& w : words) texts.push_back(format_word(spec, w));
  return build_window(spec, texts);
}

// ---------------------------------------------------------------------------

enum class Entry : std::uint8_t { Less = 0, Greater = 1, Unrelated = 2, Undecided = 3 };

inline Entry flip(Entry e) {
  if (e == Entry::Less) return Entry::Greater;
  if (e == Entry::Greater) return Entry::Less;
  return e;
}

inline const char* to_string(Entry e) {
  switch (e) {
    case Entry::Less: return "<";
    case Entry::Greater: return ">";
    case Entry::Unrelated: return "|";
    case Entry::Undecided: return "?";
  }
  return "?";
}

inline Entry entry_from_cmp(Cmp c) {
  switch (c) {
    case Cmp::Less: return Entry::Less;
    case Cmp::Greater: return Entry::Greater;
    case Cmp::Unrelated: return Entry::Unrelated;
    case Cmp::Equal: break;
  }
  throw Error("oracle reports distinct window elements as equal");
}

/// Bit sets over {Less, Greater, Unrelated}.
using StateMask = std::uint8_t;
inline constexpr StateMask kLess = 1;
inline constexpr StateMask kGreater = 2;
inline constexpr StateMask kUnrelated = 4;
inline constexpr StateMask kAllStates = 7;

inline StateMask mask_of(Entry e) { return e == Entry::Undecided ? kAllStates : static_cast<StateMask>(1u << static_cast<unsigned>(e)); }

inline StateMask flip_mask(StateMask m) {
  return static_cast<StateMask>((m & kUnrelated) | ((m & kLess) ? kGreater : 0) | ((m & kGreater) ? kLess : 0));
}

inline std::string mask_string(StateMask m) {
  std::string s;
  if (m & kLess) s += '<';
  if (m & kGreater) s += '>';
  if (m & kUnrelated) s += '|';
  return s;
}

inline StateMask parse_mask(std::string_view s) {
  StateMask m = 0;
  for (char c : s) {
    if (c == '<') m |= kLess;
    else if (c == '>') m |= kGreater;
    else if (c == '|') m |= kUnrelated;
    else throw ParseError("bad entry state '" + std::string(s) + "'");
  }
  if (!m) throw ParseError("empty entry state");
  return m;
}

/// Index of the unordered pair {i, j}, i != j, in an n-element window.
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline std::size_t pair_count(std::size_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

/// Dense pair table over a window. Only pairs i < j are stored; the entry
/// for (j, i) is the flipped entry, so antisymmetry holds by construction.
class WindowRelation {
 public:
  explicit WindowRelation(std::shared_ptr<const Window> window)
      : window_(std::move(window)), table_(pair_count(window_->size()), Entry::Undecided) {}
  explicit WindowRelation(const Window& window) : WindowRelation(std::make_shared<const Window>(window)) {}

  const Window& window() const { return *window_; }
  std::shared_ptr<const Window> window_ptr() const { return window_; }
  std::size_t size() const { return window_->size(); }

  Entry entry(std::size_t i, std::size_t j) const {
    if (i == j) throw Error("diagonal entries are implicitly equal");
    const Entry e = table_[pair_index(size(), i, j)];
    return i < j ? e : flip(e);
  }

  void set(std::size_t i, std::size_t j, Entry e) {
    if (i == j) throw Error("diagonal entries are implicitly equal");
    table_[pair_index(size(), i, j)] = i < j ? e : flip(e);
  }

  std::size_t count(Entry e) const { return static_cast<std::size_t>(std::count(table_.begin(), table_.end(), e)); }

  /// Entries of pairs i < j in pair-index order.
  const std::vector<Entry>& table() const { return table_; }

  /// Same window contents and same entries.
  friend bool operator==(const WindowRelation& a, const WindowRelation& b) {
    return a.window_->elems() == b.window_->elems() && a.table_ == b.table_;
  }

  /// FNV-1a over the entry table, as 16 hex digits.
  std::string digest() const {
    std::uint64_t h = 1469598103934665603ull;
    for (Entry e : table_) {
      h ^= static_cast<std::uint64_t>(e);
      h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = hex[h & 15];
    return s;
  }

 private:
  std::shared_ptr<const Window> window_;
  std::vector<Entry> table_;
};

// ---------------------------------------------------------------------------
// Axiom instances.

enum class Axiom : std::uint8_t { Transitivity, Totality, LeftInvariance, RightInvariance, LocalInvariance, Conradian };

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::Transitivity: return "transitivity";
    case Axiom::Totality: return "totality";
    case Axiom::LeftInvariance: return "left-invariance";
    case Axiom::RightInvariance: return "right-invariance";
    case Axiom::LocalInvariance: return "local-invariance";
    case Axiom::Conradian: return "conradian";
  }
  return "?";
}

inline Axiom parse_axiom(std::string_view s) {
  for (Axiom a : {Axiom::Transitivity, Axiom::Totality, Axiom::LeftInvariance, Axiom::RightInvariance, Axiom::LocalInvariance, Axiom::Conradian}) {
    if (s == to_string(a)) return a;
  }
  throw ParseError("unknown axiom '" + std::string(s) + "'");
}

/// "entry(i, j) is one of `allowed`", oriented so that i < j.
struct Literal {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  StateMask allowed = 0;
};

/// One window-relative axiom instance. `elems` are the quantified elements
/// (x, y, z of the axiom) as window indices.
struct Instance {
  Axiom axiom = Axiom::Transitivity;
  std::uint8_t elem_count = 0;
  std::uint8_t lit_count = 0;
  bool tautology = false;
  std::array<std::uint32_t, 3> elems{};
  std::array<Literal, 3> lits{};

  void add_elem(std::size_t i) { elems[elem_count++] = static_cast<std::uint32_t>(i); }

  /// Adds "entry(a, b) in allowed"; merges literals on the same pair.
  void add_lit(std::size_t a, std::size_t b, StateMask allowed) {
    if (a > b) {
      std::swap(a, b);
      allowed = flip_mask(allowed);
    }
    for (std::uint8_t k = 0; k < lit_count; ++k) {
      if (lits[k].i == a && lits[k].j == b) {
        lits[k].allowed |= allowed;
        if (lits[k].allowed == kAllStates) tautology = true;
        return;
      }
    }
    lits[lit_count++] = Literal{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), allowed};
  }
};

/// Products and inverses of window elements, as window indices.
class WindowAlgebra {
 public:
  explicit WindowAlgebra(const Window& w) : w_(w), n_(w.size()) {
    inverse_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) inverse_[i] = locate(invert(w.spec(), w[i]));
  }

  std::optional<std::size_t> product(std::size_t a, std::size_t b) const {
    if (products_.empty()) {
      products_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) products_[i * n_ + j] = locate(multiply(w_.spec(), w_[i], w_[j]));
      }
    }
    return products_[a * n_ + b];
  }
  std::optional<std::size_t> inverse(std::size_t a) const { return inverse_[a]; }

  /// Index of a * b^-1, computed even when b^-1 lies outside the window.
  std::optional<std::size_t> product_inverse(std::size_t a, std::size_t b) const {
    return locate(multiply(w_.spec(), w_[a], invert(w_.spec(), w_[b])));
  }
  /// Index of a * b * b.
  std::optional<std::size_t> product_square(std::size_t a, std::size_t b) const {
    return locate(multiply(w_.spec(), w_[a], multiply(w_.spec(), w_[b], w_[b])));
  }

 private:
  std::optional<std::size_t> locate(const Elem& x) const { return w_.find(x); }

  const Window& w_;
  std::size_t n_;
  std::vector<std::optional<std::size_t>> inverse_;
  mutable std::vector<std::optional<std::size_t>> products_;
};

inline bool class_has(AxiomClass cls, Axiom a) {
  switch (a) {
    case Axiom::Transitivity: return true;
    case Axiom::Totality: return is_total(cls);
    case Axiom::LeftInvariance: return is_left_invariant(cls);
    case Axiom::RightInvariance: return cls == AxiomClass::BiInvariantTotal;
    case Axiom::LocalInvariance: return cls == AxiomClass::LocallyInvariant;
    case Axiom::Conradian: return cls == AxiomClass::Conradian;
  }
  return false;
}

/// Builds the single instance of `axiom` at the given quantified elements,
/// or nullopt when it is not fully inside the window (or is vacuous).
/// Totality has no clause form and always yields nullopt.
inline std::optional<Instance> make_instance(const Window& w, const WindowAlgebra& alg, Axiom axiom, const std::vector<std::size_t>& q) {
  Instance inst;
  inst.axiom = axiom;
  auto lt = [&](std::size_t a, std::size_t b) { inst.add_lit(a, b, kLess); };
  auto not_lt = [&](std::size_t a, std::size_t b) { inst.add_lit(a, b, static_cast<StateMask>(kGreater | kUnrelated)); };
  switch (axiom) {
    case Axiom::Transitivity: {
      // x < y and y < z  =>  x < z
      if (q.size() != 3) return std::nullopt;
      const auto [x, y, z] = std::tuple{q[0], q[1], q[2]};
      if (x == y || y == z || x == z) return std::nullopt;
      inst.add_elem(x), inst.add_elem(y), inst.add_elem(z);
      not_lt(x, y), not_lt(y, z), lt(x, z);
      break;
    }
    case Axiom::LeftInvariance:
    case Axiom::RightInvariance: {
      // x < y  =>  zx < zy   (right: xz < yz)
      if (q.size() != 3) return std::nullopt;
      const auto [z, x, y] = std::tuple{q[0], q[1], q[2]};
      if (x == y || (w.identity_index() && z == *w.identity_index())) return std::nullopt;
      const bool left = axiom == Axiom::LeftInvariance;
      const auto zx = left ? alg.product(z, x) : alg.product(x, z);
      const auto zy = left ? alg.product(z, y) : alg.product(y, z);
      if (!zx || !zy) return std::nullopt;
      inst.add_elem(z), inst.add_elem(x), inst.add_elem(y);
      not_lt(x, y), lt(*zx, *zy);
      break;
    }
    case Axiom::LocalInvariance: {
      // y != e  =>  x < xy or x < xy^-1
      if (q.size() != 2) return std::nullopt;
      const auto [x, y] = std::tuple{q[0], q[1]};
      if (w.identity_index() && y == *w.identity_index()) return std::nullopt;
      if (is_identity(w.spec(), w[y])) return std::nullopt;
      const auto xy = alg.product(x, y);
      const auto xyinv = alg.product_inverse(x, y);
      if (!xy || !xyinv) return std::nullopt;
      inst.add_elem(x), inst.add_elem(y);
      lt(x, *xy), lt(x, *xyinv);
      break;
    }
    case Axiom::Conradian: {
      // e < x and e < y  =>  y < x y^2
      if (q.size() != 2) return std::nullopt;
      const auto e = w.identity_index();
      if (!e) return std::nullopt;
      const auto [x, y] = std::tuple{q[0], q[1]};
      if (x == *e || y == *e) return std::nullopt;
      const auto xyy = alg.product_square(x, y);
      if (!xyy) return std::nullopt;
      inst.add_elem(x), inst.add_elem(y);
      not_lt(*e, x), not_lt(*e, y);
      if (*xyy != y) lt(y, *xyy);
      break;
    }
    case Axiom::Totality: return std::nullopt;
  }
  return inst;
}

/// Calls fn(const Instance&) for every non-tautological clause instance of
/// the class, in a fixed order.
template <class Fn>
void for_each_instance(const Window& w, AxiomClass cls, Fn&& fn) {
  const std::size_t n = w.size();
  WindowAlgebra alg(w);
  auto emit = [&](Axiom a, std::vector<std::size_t> q) {
    if (auto inst = make_instance(w, alg, a, q); inst && !inst->tautology) fn(*inst);
  };
  if (cls == AxiomClass::LocallyInvariant) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) emit(Axiom::LocalInvariance, {x, y});
    }
  }
  if (class_has(cls, Axiom::LeftInvariance) || class_has(cls, Axiom::RightInvariance)) {
    for (std::size_t z = 0; z < n; ++z) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          if (class_has(cls, Axiom::LeftInvariance)) emit(Axiom::LeftInvariance, {z, x, y});
          if (class_has(cls, Axiom::RightInvariance)) emit(Axiom::RightInvariance, {z, x, y});
        }
      }
    }
  }
  if (cls == AxiomClass::Conradian) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) emit(Axiom::Conradian, {x, y});
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x) continue;
      for (std::size_t z = 0; z < n; ++z) emit(Axiom::Transitivity, {x, y, z});
    }
  }
}

// ---------------------------------------------------------------------------

struct Violation {
  std::string axiom;
  std::vector<std::size_t> elements;
  std::vector<std::tuple<std::size_t, std::size_t, Entry>> entries;
};

namespace detail {

inline bool literal_false(const WindowRelation& rel, const Literal& l) {
  const Entry e = rel.entry(l.i, l.j);
  return e != Entry::Undecided && !(mask_of(e) & l.allowed);
}

}  // namespace detail

/// Re-evaluates one instance; true when the relation violates it.
inline bool violates(const WindowRelation& rel, const Instance& inst) {
  for (std::uint8_t k = 0; k < inst.lit_count; ++k) {
    if (!detail::literal_false(rel, inst.lits[k])) return false;
  }
  return true;
}

/// Every checkable instance of the class that the relation violates.
inline std::vector<Violation> check_axioms(const WindowRelation& rel, AxiomClass cls) {
  std::vector<Violation> out;
  const Window& w = rel.window();
  if (is_total(cls)) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (rel.entry(i, j) == Entry::Unrelated) out.push_back({to_string(Axiom::Totality), {i, j}, {{i, j, Entry::Unrelated}}});
      }
    }
  }
  for_each_instance(w, cls, [&](const Instance& inst) {
    if (!violates(rel, inst)) return;
    Violation v{to_string(inst.axiom), {}, {}};
    for (std::uint8_t k = 0; k < inst.elem_count; ++k) v.elements.push_back(inst.elems[k]);
    for (std::uint8_t k = 0; k < inst.lit_count; ++k) v.entries.emplace_back(inst.lits[k].i, inst.lits[k].j, rel.entry(inst.lits[k].i, inst.lits[k].j));
    out.push_back(std::move(v));
  });
  return out;
}

// ---------------------------------------------------------------------------

inline void require_same_spec(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw SpecMismatch("group mismatch: " + to_string(a) + " vs " + to_string(b));
}

/// Fully decided restriction of the oracle's relation to the window.
inline WindowRelation restrict(const OrderOracle& oracle, const Window& window) {
  require_same_spec(oracle.spec, window.spec());
  WindowRelation rel(window);
  for (std::size_t i = 0; i < window.size(); ++i) {
    for (std::size_t j = i + 1; j < window.size(); ++j) rel.set(i, j, entry_from_cmp(oracle.compare(window[i], window[j])));
  }
  return rel;
}

/// Restriction of R^(g,h): entry(x, y) = compare(g x h^-1, g y h^-1).
inline WindowRelation act(const OrderOracle& oracle, const Elem& g, const Elem& h, const Window& window) {
  require_same_spec(oracle.spec, window.spec());
  const GroupSpec& spec = window.spec();
  const Elem hinv = invert(spec, h);
  std::vector<Elem> moved;
  moved.reserve(window.size());
  for (const auto& x : window.elems()) moved.push_back(multiply(spec, multiply(spec, g, x), hinv));
  WindowRelation rel(window);
  for (std::size_t i = 0; i < window.size(); ++i) {
    for (std::size_t j = i + 1; j < window.size(); ++j) rel.set(i, j, entry_from_cmp(oracle.compare(moved[i], moved[j])));
  }
  return rel;
}

/// The relation restricted to a sub-window (by element lookup).
inline WindowRelation restrict_relation(const WindowRelation& rel, const Window& sub) {
  if (!sub.subset_of(rel.window())) throw PreconditionError("window is not contained in the relation's window");
  WindowRelation out(sub);
  for (std::size_t i = 0; i < sub.size(); ++i) {
    for (std::size_t j = i + 1; j < sub.size(); ++j) out.set(i, j, rel.entry(*rel.window().find(sub[i]), *rel.window().find(sub[j])));
  }
  return out;
}

}  // namespace orderlab
