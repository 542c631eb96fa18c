#pragma once

// Text syntax for groups, words and element literals.
//
//   group    abelian:n | z:n | z | heis | free:k | klein | cyclic:k | affine
//            and products joined with '*', e.g. "abelian:1*cyclic:2"
//   word     whitespace-separated tokens g<i> or g<i>^-1 (1-based), with
//            aliases x,y,z (and a,b,c) for the first three generators;
//            any integer exponent g<i>^n is accepted. "e" or "" is identity.
//   literal  backend tuple, e.g. "(1,0,0)" (heis), "(-2,1/8)" (affine),
//            "(1,3/2^4)"; products nest tuples, "((1,0),(1))".
// An element string may carry a display label: "y^-1:(-1,1/2)".

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "orderlab/group.hpp"

namespace orderlab {

inline Word parse_word(const GroupSpec& spec, std::string_view text);

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses in '" + std::string(s) + "'");
    if (s[i] == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + std::string(s) + "'");
  parts.push_back(s.substr(start));
  return parts;
}

inline bool wrapped(std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && i + 1 < s.size()) return false;
  }
  return true;
}

inline std::int64_t parse_int64(std::string_view s, std::string_view what) {
  s = trim(s);
  if (s.empty()) throw ParseError("expected integer in " + std::string(what));
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ParseError("expected integer in " + std::string(what));
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw ParseError("bad integer '" + std::string(s) + "' in " + std::string(what));
  }
  try {
    return std::stoll(std::string(s));
  } catch (const std::out_of_range&) {
    throw ParseError("integer '" + std::string(s) + "' out of range in " + std::string(what));
  }
}

inline Int parse_big(std::string_view s, std::string_view what) {
  s = trim(s);
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw ParseError("expected integer in " + std::string(what));
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw ParseError("bad integer '" + std::string(s) + "' in " + std::string(what));
  }
  Int v(std::string(s[0] == '+' ? s.substr(1) : s));
  return v;
}

}  // namespace detail

/// Parses "num", "num/den" (den a power of two) or "num/2^e".
inline Dyadic parse_dyadic(std::string_view text) {
  text = detail::trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Dyadic(detail::parse_big(text, "dyadic"));
  const Int num = detail::parse_big(text.substr(0, slash), "dyadic numerator");
  std::string_view den = detail::trim(text.substr(slash + 1));
  if (den.rfind("2^", 0) == 0) {
    const auto e = detail::parse_int64(den.substr(2), "dyadic exponent");
    if (e < 0) throw ParseError("dyadic exponent must be >= 0");
    return Dyadic(num, e);
  }
  const Int d = detail::parse_big(den, "dyadic denominator");
  if (d <= 0 || (d & (d - 1)) != 0) throw ParseError("denominator '" + std::string(den) + "' is not a power of two");
  return Dyadic(num, static_cast<std::int64_t>(boost::multiprecision::msb(d)));
}

inline GroupSpec parse_group(std::string_view text) {
  text = detail::trim(text);
  if (text.empty()) throw ParseError("empty group string");
  const auto parts = detail::split_top_level(text, '*');
  if (parts.size() > 1) {
    std::vector<GroupSpec> factors;
    for (auto p : parts) factors.push_back(parse_group(p));
    return GroupSpec::product(std::move(factors));
  }
  if (detail::wrapped(text)) return parse_group(text.substr(1, text.size() - 2));
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  auto param = [&]() -> std::int64_t {
    if (colon == std::string_view::npos) throw ParseError("group '" + name + "' needs a parameter, e.g. " + name + ":2");
    return detail::parse_int64(text.substr(colon + 1), "group parameter");
  };
  auto no_param = [&] {
    if (colon != std::string_view::npos) throw ParseError("group '" + name + "' takes no parameter");
  };
  if (name == "abelian" || name == "free-abelian" || name == "z") {
    if (name == "z" && colon == std::string_view::npos) return GroupSpec::free_abelian(1);
    return GroupSpec::free_abelian(static_cast<int>(param()));
  }
  if (name == "free" || name == "f") return GroupSpec::free_group(static_cast<int>(param()));
  if (name == "cyclic" || name == "c") return GroupSpec::cyclic(param());
  if (name == "heis" || name == "heisenberg") {
    no_param();
    return GroupSpec::heisenberg();
  }
  if (name == "klein") {
    no_param();
    return GroupSpec::klein_bottle();
  }
  if (name == "affine" || name == "dyadic-affine" || name == "bs12") {
    no_param();
    return GroupSpec::dyadic_affine();
  }
  throw ParseError("unknown group '" + std::string(text) + "'");
}

inline std::string generator_name(const GroupSpec& spec, int gen) {
  static const char* names[] = {"x", "y", "z"};
  if (generator_count(spec) <= 3) return names[gen];
  return "g" + std::to_string(gen + 1);
}

inline std::string format_word(const GroupSpec& spec, const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += generator_name(spec, w[i].gen);
    if (w[i].sign < 0) out += "^-1";
  }
  return out;
}

/// Parses a word; integer exponents expand into repeated letters.
inline Word parse_word(const GroupSpec& spec, std::string_view text) {
  Word w;
  const int count = generator_count(spec);
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    const std::string_view token = text.substr(i, j - i);
    i = j;
    const auto caret = token.find('^');
    const std::string_view name = token.substr(0, caret);
    const std::int64_t exponent = caret == std::string_view::npos ? 1 : detail::parse_int64(token.substr(caret + 1), "word exponent");
    if (name == "e") {
      continue;
    }
    int gen = -1;
    if (name == "x" || name == "a") gen = 0;
    else if (name == "y" || name == "b") gen = 1;
    else if (name == "z" || name == "c") gen = 2;
    else if (name.size() > 1 && name[0] == 'g') gen = static_cast<int>(detail::parse_int64(name.substr(1), "generator index")) - 1;
    else throw ParseError("unknown generator '" + std::string(name) + "'");
    if (gen < 0 || gen >= count) throw ParseError("generator '" + std::string(name) + "' not in " + to_string(spec));
    if (exponent > 1000000 || exponent < -1000000) throw ParseError("word exponent too large");
    for (std::int64_t k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) w.push_back(Letter{gen, exponent < 0 ? -1 : 1});
  }
  return w;
}

namespace detail {

inline Elem parse_literal(const GroupSpec& spec, std::string_view text) {
  text = trim(text);
  std::vector<std::string_view> items;
  if (wrapped(text)) {
    items = split_top_level(text.substr(1, text.size() - 2), ',');
  } else {
    items.push_back(text);
  }
  auto need = [&](std::size_t n) {
    if (items.size() != n) {
      throw ParseError("literal '" + std::string(text) + "' needs " + std::to_string(n) + " components for " + to_string(spec));
    }
  };
  Elem r;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, FreeAbelian>) {
          need(static_cast<std::size_t>(g.rank));
          for (auto s : items) r.coords.push_back(parse_big(s, "literal"));
        } else if constexpr (std::is_same_v<T, Heisenberg>) {
          need(3);
          for (auto s : items) r.coords.push_back(parse_big(s, "literal"));
        } else if constexpr (std::is_same_v<T, KleinBottle>) {
          need(2);
          for (auto s : items) r.coords.push_back(parse_big(s, "literal"));
        } else if constexpr (std::is_same_v<T, CyclicFinite>) {
          need(1);
          Int v = parse_big(items[0], "literal") % g.order;
          if (v < 0) v += g.order;
          r.coords.push_back(v);
        } else if constexpr (std::is_same_v<T, DyadicAffine>) {
          need(2);
          const Dyadic d = parse_dyadic(items[0]);
          if (d.exp() != 0) throw ParseError("affine slope exponent must be an integer");
          r = make_affine(d.num(), parse_dyadic(items[1]));
        } else if constexpr (std::is_same_v<T, FreeGroup>) {
          if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
            r = evaluate(spec, parse_word(spec, text.substr(1, text.size() - 2)));
          } else {
            throw ParseError("free group elements have no tuple literal; use word syntax");
          }
        } else {
          need(g.factors.size());
          for (std::size_t i = 0; i < items.size(); ++i) r.factors.push_back(parse_literal(g.factors[i], items[i]));
        }
      },
      spec.kind);
  validate(spec, r);
  return r;
}

}  // namespace detail

/// Element from word or literal syntax, with an optional "name:" prefix
/// binding a local name. A prefix "name^p:" means the p-th power of the
/// bound value, so "y^-1:(-1,1/2)" is the inverse of (-1,1/2).
inline Elem parse_element(const GroupSpec& spec, std::string_view text) {
  text = detail::trim(text);
  std::int64_t exponent = 1;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    const std::string_view name = detail::trim(text.substr(0, colon));
    if (const auto caret = name.find('^'); caret != std::string_view::npos) exponent = detail::parse_int64(name.substr(caret + 1), "exponent");
    text = detail::trim(text.substr(colon + 1));
  }
  Elem a;
  if (!text.empty() && (text.front() == '(' || text.front() == '-' || std::isdigit(static_cast<unsigned char>(text.front())))) {
    a = detail::parse_literal(spec, text);
  } else {
    a = evaluate(spec, parse_word(spec, text));
  }
  return exponent == 1 ? a : power(spec, a, exponent);
}

/// Literal for leaf/product backends, reduced word for free groups.
inline std::string format_element(const GroupSpec& spec, const Elem& a) {
  validate(spec, a);
  return std::visit(
      [&](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, FreeGroup>) {
          Word w;
          for (const Int& c : a.coords) w.push_back(Letter{static_cast<int>(abs(c)) - 1, c > 0 ? 1 : -1});
          return format_word(spec, w);
        } else if constexpr (std::is_same_v<T, DyadicAffine>) {
          return "(" + a.coords[0].str() + "," + detail::dyadic_part(a).to_string() + ")";
        } else if constexpr (std::is_same_v<T, DirectProduct>) {
          std::string out = "(";
          for (std::size_t i = 0; i < g.factors.size(); ++i) {
            if (i) out += ",";
            std::string f = format_element(g.factors[i], a.factors[i]);
            out += g.factors[i].template is<FreeGroup>() ? "[" + f + "]" : f;
          }
          return out + ")";
        } else {
          std::string out = "(";
          for (std::size_t i = 0; i < a.coords.size(); ++i) {
            if (i) out += ",";
            out += a.coords[i].str();
          }
          return out + ")";
        }
      },
      spec.kind);
}

}  // namespace orderlab
