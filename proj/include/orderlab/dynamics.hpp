#pragma once

// Recurrence and Conradian probes for concrete orders under the G x G
// translation action, orbit sampling, and the certification checks for
// recurrent locally invariant orders (coset linearity, closed positive cone).
//
// Probes are bounded: Found(n) is a proof for the tested window, NotFound
// only says no recurrence up to the bound.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "orderlab/windows.hpp"

namespace orderlab {

inline constexpr int kDefaultProbeBound = 64;

enum class ProbeMode {
  /// Iterate (g^n, h^n) exactly.
  General,
  /// Left-invariant oracles only: R^(g,h) does not depend on g, use (e, h^n).
  LeftInvariantShortcut,
};

struct RecurrenceReport {
  std::string oracle;
  Elem g;
  Elem h;
  std::shared_ptr<const Window> window;
  int bound = 0;
  std::optional<int> found;
  WindowRelation original;
  /// act(g^n, h^n) for n = 1 .. found (or bound).
  std::vector<WindowRelation> orbit;
};

inline RecurrenceReport recurrence_probe(const OrderOracle& oracle, const Elem& g, const Elem& h, const Window& window, int bound = kDefaultProbeBound,
                                         ProbeMode mode = ProbeMode::General) {
  if (bound < 1) throw PreconditionError("probe bound must be >= 1");
  require_same_spec(oracle.spec, window.spec());
  const GroupSpec& spec = window.spec();
  validate(spec, g);
  validate(spec, h);
  auto shared = std::make_shared<const Window>(window);
  RecurrenceReport report{oracle.id, g, h, shared, bound, std::nullopt, restrict(oracle, window), {}};
  const Elem e = identity(spec);
  Elem gn = e;
  Elem hn = e;
  for (int n = 1; n <= bound; ++n) {
    gn = multiply(spec, gn, g);
    hn = multiply(spec, hn, h);
    WindowRelation moved = act(oracle, mode == ProbeMode::General ? gn : e, hn, *shared);
    const bool same = moved == report.original;
    report.orbit.push_back(std::move(moved));
    if (same) {
      report.found = n;
      break;
    }
  }
  return report;
}

/// Runs one probe per (g, h) pair, in parallel, results in input order.
/// Worker count is capped by ORDERLAB_THREADS when set.
inline std::vector<RecurrenceReport> recurrence_probe_many(const OrderOracle& oracle, const std::vector<std::pair<Elem, Elem>>& pairs, const Window& window,
                                                           int bound = kDefaultProbeBound) {
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("ORDERLAB_THREADS")) {
    const long v = std::strtol(cap, nullptr, 10);
    if (v >= 1) workers = std::min(workers, static_cast<std::size_t>(v));
  }
  workers = std::min(workers, std::max<std::size_t>(1, pairs.size()));
  std::vector<std::optional<RecurrenceReport>> slots(pairs.size());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < pairs.size(); i += workers) slots[i] = recurrence_probe(oracle, pairs[i].first, pairs[i].second, window, bound);
    }));
  }
  for (auto& j : jobs) j.get();
  std::vector<RecurrenceReport> out;
  out.reserve(pairs.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct ConradianReport {
  std::optional<int> found;
  int bound = 0;
  /// compare(x y^n, y) for n = 1 .. found (or bound).
  std::vector<Cmp> audit;
};

/// Least n <= bound with x y^n > y. Requires a left-invariant total oracle
/// (checked on the radius-1 ball plus x and y) and x, y > e.
inline ConradianReport conradian_probe(const OrderOracle& oracle, const Elem& x, const Elem& y, int bound = kDefaultProbeBound) {
  if (bound < 1) throw PreconditionError("probe bound must be >= 1");
  const GroupSpec& spec = oracle.spec;
  validate(spec, x);
  validate(spec, y);
  if (!is_left_invariant(oracle.declared)) {
    throw PreconditionError("Conradian probe needs a left-invariant total order, '" + oracle.id + "' is declared " + to_string(oracle.declared));
  }
  {
    Window b = ball(spec, 1);
    std::vector<Elem> elems = b.elems();
    for (const Elem& extra : {x, y}) {
      if (!b.contains(extra) && std::find(elems.begin(), elems.end(), extra) == elems.end()) elems.push_back(extra);
    }
    const auto violations = check_axioms(restrict(oracle, Window(spec, elems)), AxiomClass::LeftInvariantTotal);
    if (!violations.empty()) throw PreconditionError("oracle '" + oracle.id + "' fails " + violations.front().axiom + " near x, y");
  }
  const Elem e = identity(spec);
  if (oracle.compare(x, e) != Cmp::Greater) throw PreconditionError("Conradian probe needs x > e");
  if (oracle.compare(y, e) != Cmp::Greater) throw PreconditionError("Conradian probe needs y > e");
  ConradianReport report;
  report.bound = bound;
  Elem xyn = x;
  for (int n = 1; n <= bound; ++n) {
    xyn = multiply(spec, xyn, y);
    const Cmp c = oracle.compare(xyn, y);
    report.audit.push_back(c);
    if (c == Cmp::Greater) {
      report.found = n;
      break;
    }
  }
  return report;
}

struct OrbitSample {
  std::string oracle;
  Elem g;
  Elem h;
  std::shared_ptr<const Window> window;
  /// act(g^n, h^n) for n = 1 .. N.
  std::vector<WindowRelation> restrictions;
  /// Distinct restrictions in order of first appearance, with counts.
  std::vector<std::pair<WindowRelation, std::size_t>> frequencies;
};

inline OrbitSample orbit_restrictions(const OrderOracle& oracle, const Elem& g, const Elem& h, const Window& window, int bound = kDefaultProbeBound) {
  if (bound < 1) throw PreconditionError("orbit length must be >= 1");
  require_same_spec(oracle.spec, window.spec());
  const GroupSpec& spec = window.spec();
  auto shared = std::make_shared<const Window>(window);
  OrbitSample s{oracle.id, g, h, shared, {}, {}};
  Elem gn = identity(spec);
  Elem hn = gn;
  for (int n = 1; n <= bound; ++n) {
    gn = multiply(spec, gn, g);
    hn = multiply(spec, hn, h);
    WindowRelation r = act(oracle, gn, hn, *shared);
    auto it = std::find_if(s.frequencies.begin(), s.frequencies.end(), [&](const auto& f) { return f.first == r; });
    if (it == s.frequencies.end()) {
      s.frequencies.emplace_back(r, 1);
    } else {
      ++it->second;
    }
    s.restrictions.push_back(std::move(r));
  }
  return s;
}

/// Heuristic stand-in for an accumulation point of the orbit: the most
/// frequent restriction over the last half of the sample, ties going to the
/// one seen latest.
inline WindowRelation limit_restriction(const OrbitSample& sample) {
  if (sample.restrictions.empty()) throw PreconditionError("empty orbit sample");
  const std::size_t n = sample.restrictions.size();
  const std::size_t tail_begin = n / 2;
  std::size_t best = n - 1;
  std::size_t best_count = 0;
  for (std::size_t i = n; i-- > tail_begin;) {
    std::size_t count = 0;
    for (std::size_t j = tail_begin; j < n; ++j) count += sample.restrictions[j] == sample.restrictions[i] ? 1 : 0;
    if (count > best_count) {
      best_count = count;
      best = i;
    }
  }
  return sample.restrictions[best];
}

struct CosetReport {
  bool pass = false;
  /// g x^-k, ..., g, ..., g x^k
  std::vector<Elem> chain;
  /// compare(chain[i], chain[i+1])
  std::vector<Cmp> steps;
};

/// The coset chain g x^-k < ... < g x^k must be strictly monotone in one direction.
inline CosetReport coset_linearity_check(const OrderOracle& oracle, const Elem& g, const Elem& x, int k) {
  const GroupSpec& spec = oracle.spec;
  validate(spec, g);
  validate(spec, x);
  if (is_identity(spec, x)) throw PreconditionError("coset linearity needs x != e");
  if (k < 1) throw PreconditionError("coset linearity needs k >= 1");
  CosetReport r;
  for (int i = -k; i <= k; ++i) r.chain.push_back(multiply(spec, g, power(spec, x, i)));
  for (std::size_t i = 0; i + 1 < r.chain.size(); ++i) r.steps.push_back(oracle.compare(r.chain[i], r.chain[i + 1]));
  const Cmp first = r.steps.front();
  r.pass = (first == Cmp::Less || first == Cmp::Greater) && std::all_of(r.steps.begin(), r.steps.end(), [&](Cmp c) { return c == first; });
  return r;
}

/// Positive cone closed under products: x, y > e and xy in the window
/// must give xy > e.
inline std::vector<Violation> cone_closed_check(const OrderOracle& oracle, const Window& window) {
  require_same_spec(oracle.spec, window.spec());
  const GroupSpec& spec = window.spec();
  const Elem e = identity(spec);
  std::vector<char> positive(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) positive[i] = oracle.compare(window[i], e) == Cmp::Greater;
  std::vector<Violation> out;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (!positive[i]) continue;
    for (std::size_t j = 0; j < window.size(); ++j) {
      if (!positive[j]) continue;
      const auto xy = window.find(multiply(spec, window[i], window[j]));
      if (!xy || positive[*xy]) continue;
      Violation v{"cone-closure", {i, j, *xy}, {}};
      if (const auto ei = window.identity_index(); ei && *ei != *xy) v.entries.emplace_back(*ei, *xy, entry_from_cmp(oracle.compare(e, window[*xy])));
      out.push_back(std::move(v));
    }
  }
  return out;
}

/// Pairs of the window where cone_to_order(order_to_cone(oracle)) disagrees
/// with the oracle.
inline std::vector<std::pair<std::size_t, std::size_t>> cone_round_trip_mismatches(const OrderOracle& oracle, const Window& window) {
  const OrderOracle derived = cone_to_order(order_to_cone(oracle));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < window.size(); ++i) {
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      if (oracle.compare(window[i], window[j]) != derived.compare(window[i], window[j])) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace orderlab
