#pragma once

// Experiment runner behind the orderlab CLI: config parsing, the command
// implementations, byte-stable JSON artifacts and certificate replay.
// Kept out of include/ so the library itself needs nothing but Boost.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "orderlab/dynamics.hpp"
#include "orderlab/search.hpp"

namespace orderlab::cli {

using json = nlohmann::json;

/// Bad flags, missing fields, unreadable inputs: exit status 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum Exit : int { kOk = 0, kUsage = 1, kExhausted = 2, kVerifyFailed = 3 };

inline const std::vector<std::string> kCommands = {"solve", "enumerate", "obstruct", "probe", "conradian", "orbit", "certify-prop41", "identity-check"};

struct Config {
  std::string command;
  std::string group;
  std::optional<std::string> cls;
  std::optional<std::string> oracle;
  std::optional<int> radius;
  std::optional<std::string> window_file;
  std::optional<std::vector<std::string>> window_words;
  std::optional<std::string> g, h, x, y;
  std::string mode = "general";
  int k = 2;
  int N = kDefaultProbeBound;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t limit = 10;
  int max_radius = 3;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  // Not part of the recorded inputs.
  std::string out;
  bool timing = false;
};

inline std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  for (auto part : detail::split_top_level(s, ';')) out.emplace_back(detail::trim(part));
  return out;
}

/// Recorded inputs; everything a rerun needs, nothing run-specific.
inline json to_json(const Config& c) {
  json j;
  j["command"] = c.command;
  j["group"] = c.group;
  if (c.cls) j["class"] = *c.cls;
  if (c.oracle) j["oracle"] = *c.oracle;
  if (c.radius) j["radius"] = *c.radius;
  if (c.window_file) j["window_file"] = *c.window_file;
  if (c.window_words) j["window_words"] = *c.window_words;
  if (c.g) j["g"] = *c.g;
  if (c.h) j["h"] = *c.h;
  if (c.x) j["x"] = *c.x;
  if (c.y) j["y"] = *c.y;
  j["mode"] = c.mode;
  j["k"] = c.k;
  j["N"] = c.N;
  j["budget"] = c.budget;
  j["limit"] = c.limit;
  j["max_radius"] = c.max_radius;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  return j;
}

inline Config config_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  Config c;
  auto str = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_string()) throw UsageError(std::string("config field '") + key + "' must be a string");
    return j[key].get<std::string>();
  };
  auto num = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw UsageError(std::string("config field '") + key + "' must be an integer");
    dst = j[key].get<std::decay_t<decltype(dst)>>();
  };
  static const std::vector<std::string> known = {"command", "group", "class",   "oracle",     "radius",  "window_file", "window_words", "g",    "h", "x",
                                                 "y",       "mode",  "k",       "N",          "budget",  "limit",       "max_radius",   "samples", "seed", "out", "timing"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw UsageError("unknown config field '" + key + "'");
  }
  c.command = str("command").value_or("");
  c.group = str("group").value_or("");
  c.cls = str("class");
  c.oracle = str("oracle");
  if (j.contains("radius")) {
    int r = 0;
    num("radius", r);
    c.radius = r;
  }
  c.window_file = str("window_file");
  if (j.contains("window_words")) {
    if (j["window_words"].is_string()) {
      c.window_words = split_words(j["window_words"].get<std::string>());
    } else if (j["window_words"].is_array()) {
      c.window_words = j["window_words"].get<std::vector<std::string>>();
    } else {
      throw UsageError("config field 'window_words' must be a string or a list");
    }
  }
  c.g = str("g");
  c.h = str("h");
  c.x = str("x");
  c.y = str("y");
  c.mode = str("mode").value_or(c.mode);
  num("k", c.k);
  num("N", c.N);
  num("budget", c.budget);
  num("limit", c.limit);
  num("max_radius", c.max_radius);
  num("samples", c.samples);
  num("seed", c.seed);
  c.out = str("out").value_or("");
  if (j.contains("timing")) c.timing = j["timing"].get<bool>();
  return c;
}

// ---------------------------------------------------------------------------
// JSON encodings.

inline json window_json(const Window& w) { return w.labels(); }

inline json relation_json(const WindowRelation& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < r.size(); ++j) row.push_back(i == j ? "=" : to_string(r.entry(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"window", window_json(r.window())}, {"entries", std::move(rows)}};
}

inline json trace_json(const Window& w, const std::vector<TraceStep>& trace) {
  json out = json::array();
  for (const auto& s : trace) {
    json elems = json::array();
    for (auto e : s.elements) elems.push_back(w.label(e));
    json forced = json::array();
    for (const auto& f : s.forced) forced.push_back({w.label(f.i), w.label(f.j), mask_string(f.state)});
    out.push_back({{"axiom", s.axiom}, {"elements", std::move(elems)}, {"forced", std::move(forced)}});
  }
  return out;
}

inline json certificate_json(const GroupSpec& spec, const Certificate& c) {
  json j{{"group", to_string(spec)}, {"window", window_json(*c.window)}, {"class", to_string(c.cls)}, {"result", to_string(c.result)}, {"nodes", c.nodes}};
  if (c.witness) j["witness"] = relation_json(*c.witness);
  if (c.result == Outcome::Unsat) j["trace"] = trace_json(*c.window, c.trace);
  return j;
}

inline json violation_json(const Window& w, const Violation& v) {
  json elems = json::array();
  for (auto e : v.elements) elems.push_back(w.label(e));
  json entries = json::array();
  for (const auto& [i, j, e] : v.entries) entries.push_back({w.label(i), w.label(j), to_string(e)});
  return {{"axiom", v.axiom}, {"elements", std::move(elems)}, {"entries", std::move(entries)}};
}

/// Window rebuilt from exported labels; each label must parse back to a
/// distinct element.
inline Window window_from_json(const GroupSpec& spec, const json& labels) {
  std::vector<Elem> elems;
  std::vector<std::string> names;
  for (const auto& l : labels) {
    names.push_back(l.get<std::string>());
    elems.push_back(parse_element(spec, names.back()));
  }
  return Window(spec, std::move(elems), std::move(names));
}

inline Entry entry_from_string(const std::string& s) {
  if (s == "<") return Entry::Less;
  if (s == ">") return Entry::Greater;
  if (s == "|") return Entry::Unrelated;
  if (s == "?") return Entry::Undecided;
  throw ParseError("bad relation entry '" + s + "'");
}

inline WindowRelation relation_from_json(const GroupSpec& spec, const json& j) {
  auto w = std::make_shared<const Window>(window_from_json(spec, j.at("window")));
  const json& rows = j.at("entries");
  if (rows.size() != w->size()) throw ParseError("relation matrix has the wrong size");
  WindowRelation r(w);
  for (std::size_t i = 0; i < w->size(); ++i) {
    if (rows[i].size() != w->size()) throw ParseError("relation matrix row has the wrong size");
    if (rows[i][i] != "=") throw ParseError("relation diagonal must be '='");
    for (std::size_t k = i + 1; k < w->size(); ++k) {
      const Entry e = entry_from_string(rows[i][k].get<std::string>());
      if (entry_from_string(rows[k][i].get<std::string>()) != flip(e)) throw ParseError("relation matrix is not antisymmetric");
      r.set(i, k, e);
    }
  }
  return r;
}

inline std::vector<TraceStep> trace_from_json(const Window& w, const json& j) {
  auto index = [&](const json& label) {
    const auto i = w.find(parse_element(w.spec(), label.get<std::string>()));
    if (!i) throw ParseError("trace mentions '" + label.get<std::string>() + "', which is not in the window");
    return *i;
  };
  std::vector<TraceStep> out;
  for (const auto& s : j) {
    TraceStep step{s.at("axiom").get<std::string>(), {}, {}};
    for (const auto& e : s.at("elements")) step.elements.push_back(index(e));
    for (const auto& f : s.at("forced")) step.forced.push_back({index(f.at(0)), index(f.at(1)), parse_mask(f.at(2).get<std::string>())});
    out.push_back(std::move(step));
  }
  return out;
}

inline json found_json(const std::optional<int>& n) { return n ? json{{"found", *n}} : json("not_found"); }

// ---------------------------------------------------------------------------
// Commands.

struct RunResult {
  int exit = kOk;
  json artifact;
  /// Fixed-format summary lines for stdout.
  std::vector<std::pair<std::string, std::string>> summary;
};

namespace detail {

inline std::string require(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing --") + flag);
  return *v;
}

inline Window window_of(const Config& c, const GroupSpec& spec) {
  const int sources = (c.radius ? 1 : 0) + (c.window_file ? 1 : 0) + (c.window_words ? 1 : 0);
  if (sources != 1) throw UsageError("give exactly one of --radius, --window-file, --window-words");
  if (c.radius) {
    if (*c.radius < 0) throw UsageError("--radius must be >= 0");
    return ball(spec, *c.radius);
  }
  if (c.window_words) return build_window(spec, *c.window_words);
  try {
    return build_window(spec, read_element_lines(*c.window_file));
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

inline void require_positive(long long v, const char* flag) {
  if (v < 1) throw UsageError(std::string("--") + flag + " must be >= 1");
}

inline std::string fmt(const GroupSpec& spec, const Elem& a) { return is_identity(spec, a) ? "e" : format_element(spec, a); }

inline RunResult run_solve(const Config& c, const GroupSpec& spec) {
  const AxiomClass cls = parse_class(require(c.cls, "class"));
  require_positive(static_cast<long long>(c.budget), "budget");
  const Window w = window_of(c, spec);
  const Certificate cert = solve(w, cls, c.budget);
  RunResult r{cert.result == Outcome::Exhausted ? kExhausted : kOk, certificate_json(spec, cert), {}};
  r.summary = {{"window", std::to_string(w.size()) + " elements"}, {"result", to_string(cert.result)}, {"nodes", std::to_string(cert.nodes)}};
  if (cert.result == Outcome::Unsat) r.summary.emplace_back("trace", std::to_string(cert.trace.size()) + " steps");
  return r;
}

inline RunResult run_enumerate(const Config& c, const GroupSpec& spec) {
  const AxiomClass cls = parse_class(require(c.cls, "class"));
  require_positive(static_cast<long long>(c.budget), "budget");
  const Window w = window_of(c, spec);
  const Enumeration e = enumerate(w, cls, c.limit, c.budget);
  json witnesses = json::array();
  for (const auto& rel : e.witnesses) witnesses.push_back(relation_json(rel));
  json j{{"group", to_string(spec)}, {"window", window_json(w)}, {"class", to_string(cls)}, {"count", e.count}, {"complete", e.complete}, {"witnesses", std::move(witnesses)},
         {"nodes", e.nodes}};
  RunResult r{e.complete ? kOk : kExhausted, std::move(j), {}};
  r.summary = {{"window", std::to_string(w.size()) + " elements"},
               {"count", std::to_string(e.count) + (e.complete ? "" : " (lower bound, budget exhausted)")},
               {"nodes", std::to_string(e.nodes)}};
  return r;
}

inline RunResult run_obstruct(const Config& c, const GroupSpec& spec) {
  const AxiomClass cls = parse_class(require(c.cls, "class"));
  require_positive(c.max_radius, "max-radius");
  require_positive(static_cast<long long>(c.budget), "budget");
  const Obstruction o = find_obstruction(spec, cls, c.max_radius, c.budget);
  json tried = json::array();
  bool exhausted = false;
  for (const auto& [radius, outcome] : o.tried) {
    tried.push_back({{"radius", radius}, {"result", to_string(outcome)}});
    exhausted = exhausted || outcome == Outcome::Exhausted;
  }
  json j{{"group", to_string(spec)}, {"class", to_string(cls)}, {"max_radius", c.max_radius}, {"tried", std::move(tried)}};
  j["result"] = o.radius ? json{{"radius", *o.radius}} : json("none_found");
  if (o.certificate) j["certificate"] = certificate_json(spec, *o.certificate);
  RunResult r{!o.radius && exhausted ? kExhausted : kOk, std::move(j), {}};
  r.summary = {{"result", o.radius ? "unsat at radius " + std::to_string(*o.radius) : "none found up to radius " + std::to_string(c.max_radius)}};
  return r;
}

inline RunResult run_probe(const Config& c, const GroupSpec& spec) {
  const OrderOracle oracle = parse_oracle(spec, require(c.oracle, "oracle"));
  const Elem g = parse_element(spec, require(c.g, "g"));
  const Elem h = parse_element(spec, require(c.h, "h"));
  require_positive(c.N, "N");
  ProbeMode mode = ProbeMode::General;
  if (c.mode == "shortcut") {
    if (!is_left_invariant(oracle.declared)) throw UsageError("--mode shortcut needs a left-invariant oracle");
    mode = ProbeMode::LeftInvariantShortcut;
  } else if (c.mode != "general") {
    throw UsageError("--mode must be general or shortcut");
  }
  const Window w = window_of(c, spec);
  const RecurrenceReport rep = recurrence_probe(oracle, g, h, w, c.N, mode);
  json digest = json::array();
  for (std::size_t n = 0; n < rep.orbit.size(); ++n) digest.push_back({{"n", n + 1}, {"hash", rep.orbit[n].digest()}});
  json j{{"oracle", oracle.id},
         {"g", fmt(spec, g)},
         {"h", fmt(spec, h)},
         {"window", window_json(w)},
         {"N", c.N},
         {"mode", c.mode},
         {"result", found_json(rep.found)},
         {"restriction", relation_json(rep.original)},
         {"orbit_digest", std::move(digest)}};
  if (!rep.found) {
    j["note"] = "no recurrence up to N=" + std::to_string(c.N);
    j["last"] = relation_json(rep.orbit.back());
  }
  RunResult r{kOk, std::move(j), {}};
  r.summary = {{"oracle", oracle.id}, {"result", rep.found ? "found n=" + std::to_string(*rep.found) : "no recurrence up to N=" + std::to_string(c.N)}};
  return r;
}

inline RunResult run_conradian(const Config& c, const GroupSpec& spec) {
  const OrderOracle oracle = parse_oracle(spec, require(c.oracle, "oracle"));
  const Elem x = parse_element(spec, require(c.x, "x"));
  const Elem y = parse_element(spec, require(c.y, "y"));
  require_positive(c.N, "N");
  ConradianReport rep;
  try {
    rep = conradian_probe(oracle, x, y, c.N);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  json audit = json::array();
  for (std::size_t n = 0; n < rep.audit.size(); ++n) audit.push_back({{"n", n + 1}, {"x y^n vs y", to_string(rep.audit[n])}});
  json j{{"oracle", oracle.id}, {"x", fmt(spec, x)}, {"y", fmt(spec, y)}, {"N", c.N}, {"result", found_json(rep.found)}, {"audit", std::move(audit)}};
  if (!rep.found) j["note"] = "no n <= " + std::to_string(c.N) + " with x y^n > y";
  RunResult r{kOk, std::move(j), {}};
  r.summary = {{"oracle", oracle.id}, {"result", rep.found ? "found n=" + std::to_string(*rep.found) : "not found up to N=" + std::to_string(c.N)}};
  return r;
}

inline RunResult run_orbit(const Config& c, const GroupSpec& spec) {
  const OrderOracle oracle = parse_oracle(spec, require(c.oracle, "oracle"));
  const Elem g = c.g ? parse_element(spec, *c.g) : identity(spec);
  const Elem h = parse_element(spec, require(c.h, "h"));
  require_positive(c.N, "N");
  const Window w = window_of(c, spec);
  const OrbitSample s = orbit_restrictions(oracle, g, h, w, c.N);
  const WindowRelation limit = limit_restriction(s);
  json samples = json::array();
  for (std::size_t n = 0; n < s.restrictions.size(); ++n) samples.push_back({{"n", n + 1}, {"hash", s.restrictions[n].digest()}});
  json distinct = json::array();
  for (const auto& [rel, count] : s.frequencies) {
    distinct.push_back({{"hash", rel.digest()}, {"count", count}, {"relation", relation_json(rel)}, {"unrelated", rel.count(Entry::Unrelated)}});
  }
  json j{{"oracle", oracle.id},
         {"g", fmt(spec, g)},
         {"h", fmt(spec, h)},
         {"window", window_json(w)},
         {"N", c.N},
         {"original", relation_json(restrict(oracle, w))},
         {"samples", std::move(samples)},
         {"distinct", std::move(distinct)},
         {"limit",
          {{"heuristic", true},
           {"rule", "most frequent over the last half of the sample, ties to the latest"},
           {"hash", limit.digest()},
           {"unrelated", limit.count(Entry::Unrelated)},
           {"relation", relation_json(limit)}}}};
  RunResult r{kOk, std::move(j), {}};
  r.summary = {{"oracle", oracle.id}, {"distinct", std::to_string(s.frequencies.size())}, {"limit", limit.digest() + " (heuristic)"}};
  return r;
}

/// Prop 4.1 at window scale: if the oracle is locally invariant and
/// recurrent for every right translation by a window element, its cosets
/// are linear, its positive cone is closed and it is left-invariant.
inline RunResult run_certify(const Config& c, const GroupSpec& spec) {
  const OrderOracle oracle = parse_oracle(spec, require(c.oracle, "oracle"));
  require_positive(c.N, "N");
  require_positive(c.k, "k");
  const Window w = window_of(c, spec);
  const Elem e = identity(spec);
  const auto li = check_axioms(restrict(oracle, w), AxiomClass::LocallyInvariant);
  json recurrence = json::array();
  bool recurrent = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == e) continue;
    const auto rep = recurrence_probe(oracle, e, w[i], w, c.N);
    recurrent = recurrent && rep.found.has_value();
    recurrence.push_back({{"h", w.label(i)}, {"result", found_json(rep.found)}});
  }
  json coset_failures = json::array();
  std::size_t coset_checked = 0;
  for (std::size_t gi = 0; gi < w.size(); ++gi) {
    for (std::size_t xi = 0; xi < w.size(); ++xi) {
      if (w[xi] == e) continue;
      ++coset_checked;
      if (!coset_linearity_check(oracle, w[gi], w[xi], c.k).pass) coset_failures.push_back({{"g", w.label(gi)}, {"x", w.label(xi)}});
    }
  }
  const auto cone = cone_closed_check(oracle, w);
  json cone_j = json::array();
  for (const auto& v : cone) cone_j.push_back(violation_json(w, v));
  const std::size_t left = check_axioms(restrict(oracle, w), AxiomClass::LeftInvariantTotal).size();
  const bool conclusions = coset_failures.empty() && cone.empty() && left == 0;
  std::string verdict;
  if (!li.empty()) {
    verdict = "not locally invariant on the window";
  } else if (!recurrent) {
    verdict = "not recurrent up to N; the proposition does not apply";
  } else {
    verdict = conclusions ? "recurrent; all conclusions hold" : "recurrent; a conclusion FAILS";
  }
  json j{{"oracle", oracle.id},
         {"window", window_json(w)},
         {"N", c.N},
         {"k", c.k},
         {"locally_invariant_violations", li.size()},
         {"recurrence", std::move(recurrence)},
         {"recurrent", recurrent},
         {"coset_linearity", {{"checked", coset_checked}, {"failures", std::move(coset_failures)}}},
         {"cone_closed_violations", std::move(cone_j)},
         {"left_invariant_total_violations", left},
         {"verdict", verdict}};
  RunResult r{kOk, std::move(j), {}};
  r.summary = {{"oracle", oracle.id}, {"recurrent", recurrent ? "yes (for all tested h)" : "no recurrence up to N"}, {"verdict", verdict}};
  return r;
}

/// Random element: a word of length 0..6 in the generators, drawn with raw
/// mt19937_64 output so the stream is identical on every platform.
inline Elem random_element(const GroupSpec& spec, std::mt19937_64& rng) {
  const auto gens = static_cast<std::uint64_t>(generator_count(spec));
  Word w;
  for (std::uint64_t len = rng() % 7; len > 0; --len) {
    const int gen = static_cast<int>(rng() % gens);
    w.push_back({gen, rng() % 2 ? 1 : -1});
  }
  return evaluate(spec, w);
}

inline RunResult run_identity_check(const Config& c, const GroupSpec& spec) {
  require_positive(static_cast<long long>(c.samples), "samples");
  std::mt19937_64 rng(c.seed);
  std::uint64_t passed = 0;
  json failures = json::array();
  for (std::uint64_t s = 0; s < c.samples; ++s) {
    const Elem x = random_element(spec, rng);
    const Elem h = random_element(spec, rng);
    const auto n = static_cast<std::int64_t>(1 + rng() % 8);
    if (telescope_identity_check(spec, x, h, n)) {
      ++passed;
    } else if (failures.size() < 10) {
      failures.push_back({{"x", fmt(spec, x)}, {"h", fmt(spec, h)}, {"n", n}});
    }
  }
  json j{{"group", to_string(spec)}, {"samples", c.samples}, {"seed", c.seed}, {"passed", passed}, {"failures", std::move(failures)}};
  RunResult r{kOk, std::move(j), {}};
  r.summary = {{"identities", std::to_string(passed) + "/" + std::to_string(c.samples) + " hold"}};
  return r;
}

}  // namespace detail

/// Runs one experiment. Usage and input errors surface as exceptions
/// (UsageError, ParseError, SpecMismatch, ...); the caller maps them to exit 1.
inline RunResult run(const Config& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) throw UsageError("unknown command '" + c.command + "'");
  if (c.group.empty()) throw UsageError("missing --group");
  const GroupSpec spec = parse_group(c.group);
  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  if (c.command == "solve") r = detail::run_solve(c, spec);
  if (c.command == "enumerate") r = detail::run_enumerate(c, spec);
  if (c.command == "obstruct") r = detail::run_obstruct(c, spec);
  if (c.command == "probe") r = detail::run_probe(c, spec);
  if (c.command == "conradian") r = detail::run_conradian(c, spec);
  if (c.command == "orbit") r = detail::run_orbit(c, spec);
  if (c.command == "certify-prop41") r = detail::run_certify(c, spec);
  if (c.command == "identity-check") r = detail::run_identity_check(c, spec);
  Config recorded = c;
  if (recorded.window_file) {
    // Inline the file so the artifact carries its own inputs.
    recorded.window_words = read_element_lines(*recorded.window_file);
    recorded.window_file.reset();
  }
  r.artifact["command"] = c.command;
  r.artifact["config"] = to_json(recorded);
  if (c.timing) {
    r.artifact["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  r.summary.insert(r.summary.begin(), {{"command", c.command}, {"group", to_string(spec)}});
  return r;
}

/// Sorted keys, two-space indent, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string format_summary(const RunResult& r) {
  std::ostringstream os;
  for (const auto& [k, v] : r.summary) {
    os << k;
    for (std::size_t i = k.size(); i < 10; ++i) os << ' ';
    os << ' ' << v << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// verify

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> checks;
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& what) {
    (cond ? checks : failures).push_back(what);
    ok = ok && cond;
  }
};

namespace detail {

inline void verify_certificate(const json& cert, VerifyResult& v) {
  const GroupSpec spec = parse_group(cert.at("group").get<std::string>());
  const AxiomClass cls = parse_class(cert.at("class").get<std::string>());
  const Window w = window_from_json(spec, cert.at("window"));
  const std::string result = cert.at("result");
  if (result == "sat") {
    const WindowRelation rel = relation_from_json(spec, cert.at("witness"));
    v.expect(rel.window().elems() == w.elems(), "witness is over the certificate window");
    v.expect(rel.count(Entry::Undecided) == 0, "witness is fully decided");
    v.expect(check_axioms(rel, cls).empty(), "witness satisfies every " + std::string(to_string(cls)) + " instance");
  } else if (result == "unsat") {
    const ReplayResult rr = replay_trace(w, cls, trace_from_json(w, cert.at("trace")));
    v.expect(rr.contradiction, "trace replays to a contradiction" + (rr.error.empty() ? "" : " (" + rr.error + ")"));
  }
}

inline void verify_enumeration(const json& a, VerifyResult& v) {
  const GroupSpec spec = parse_group(a.at("group").get<std::string>());
  const AxiomClass cls = parse_class(a.at("class").get<std::string>());
  std::vector<WindowRelation> seen;
  for (const auto& wj : a.at("witnesses")) {
    WindowRelation rel = relation_from_json(spec, wj);
    v.expect(rel.count(Entry::Undecided) == 0 && check_axioms(rel, cls).empty(), "witness " + std::to_string(seen.size() + 1) + " satisfies the class");
    v.expect(std::find(seen.begin(), seen.end(), rel) == seen.end(), "witness " + std::to_string(seen.size() + 1) + " is new");
    seen.push_back(std::move(rel));
  }
  v.expect(a.at("count").get<std::uint64_t>() >= seen.size(), "count covers the listed witnesses");
}

}  // namespace detail

/// Replays what can be replayed independently of the solver (witnesses
/// against the checkers, traces step by step), then reruns the recorded
/// inputs and requires the same artifact.
inline VerifyResult verify(const json& artifact) {
  VerifyResult v;
  const std::string command = artifact.at("command");
  if (command == "solve") detail::verify_certificate(artifact, v);
  if (command == "enumerate") detail::verify_enumeration(artifact, v);
  if (command == "obstruct" && artifact.contains("certificate")) {
    detail::verify_certificate(artifact["certificate"], v);
    v.expect(artifact["certificate"]["result"] == "unsat", "obstruction certificate is unsat");
  }
  if (command == "probe" && artifact.at("result").is_object()) {
    const GroupSpec spec = parse_group(artifact.at("config").at("group").get<std::string>());
    const WindowRelation original = relation_from_json(spec, artifact.at("restriction"));
    const OrderOracle oracle = parse_oracle(spec, artifact.at("config").at("oracle").get<std::string>());
    v.expect(restrict(oracle, original.window()) == original, "recorded restriction matches the oracle");
    const int n = artifact["result"]["found"];
    const Elem g = parse_element(spec, artifact.at("g").get<std::string>());
    const Elem h = parse_element(spec, artifact.at("h").get<std::string>());
    const bool shortcut = artifact.at("mode") == "shortcut";
    v.expect(act(oracle, shortcut ? identity(spec) : power(spec, g, n), power(spec, h, n), original.window()) == original,
             "translation by the n-th power restores the restriction");
  }
  Config c = config_from_json(artifact.at("config"));
  json redo = run(c).artifact;
  json recorded = artifact;
  recorded.erase("wall_ms");
  v.expect(redo == recorded, "rerunning the recorded inputs reproduces the artifact");
  return v;
}

}  // namespace orderlab::cli
