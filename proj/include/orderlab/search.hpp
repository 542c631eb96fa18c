#pragma once

// Backtracking search over window relations: find a relation satisfying
// every window-relative instance of an order class, refute the class on the
// window, or enumerate all satisfying relations.
//
// Each pair {i, j} is a variable whose domain is a subset of {<, >, |}
// (unrelated only for partial classes). After every decision the clauses are
// closed under unit propagation; a clause whose literals are all false, or a
// domain that becomes empty, is a conflict.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orderlab/windows.hpp"

namespace orderlab {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// One entry forced by a trace step: entry(i, j) restricted to `state`.
struct Forced {
  std::size_t i = 0;
  std::size_t j = 0;
  StateMask state = 0;
};

/// A decision ("decision", one pair) or a propagation by an axiom instance.
struct TraceStep {
  std::string axiom;
  std::vector<std::size_t> elements;
  std::vector<Forced> forced;
};

enum class Outcome { Sat, Unsat, Exhausted };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Sat: return "sat";
    case Outcome::Unsat: return "unsat";
    case Outcome::Exhausted: return "exhausted";
  }
  return "?";
}

struct Certificate {
  Outcome result = Outcome::Exhausted;
  AxiomClass cls = AxiomClass::PartialOrder;
  std::shared_ptr<const Window> window;
  std::optional<WindowRelation> witness;
  std::vector<TraceStep> trace;
  std::uint64_t nodes = 0;
};

struct Enumeration {
  std::uint64_t count = 0;
  bool complete = false;
  std::vector<WindowRelation> witnesses;
  std::uint64_t nodes = 0;
};

inline StateMask initial_domain(AxiomClass cls) { return is_total(cls) ? static_cast<StateMask>(kLess | kGreater) : kAllStates; }

namespace detail {

class Solver {
 public:
  Solver(std::shared_ptr<const Window> window, AxiomClass cls, std::uint64_t budget)
      : window_(std::move(window)), cls_(cls), n_(window_->size()), budget_(budget) {
    const std::size_t pairs = pair_count(n_);
    dom_.assign(pairs, initial_domain(cls));
    occurrences_.resize(pairs);
    for_each_instance(*window_, cls, [&](const Instance& inst) {
      const auto id = static_cast<std::uint32_t>(clauses_.size());
      clauses_.push_back(inst);
      for (std::uint8_t k = 0; k < inst.lit_count; ++k) occurrences_[var(inst.lits[k])].push_back(id);
    });
    queued_.assign(clauses_.size(), 0);
    order_.resize(pairs);
    std::vector<std::pair<std::size_t, std::size_t>> pair_of(pairs);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) pair_of[pair_index(n_, i, j)] = {i, j};
    }
    pair_of_ = pair_of;
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const auto la = window_->length(pair_of[a].first) + window_->length(pair_of[a].second);
      const auto lb = window_->length(pair_of[b].first) + window_->length(pair_of[b].second);
      if (la != lb) return la < lb;
      return pair_of[a] < pair_of[b];
    });
  }

  Certificate solve() {
    stop_at_first_ = true;
    search(0);
    Certificate cert;
    cert.cls = cls_;
    cert.window = window_;
    cert.nodes = nodes_;
    if (!solutions_.empty()) {
      cert.result = Outcome::Sat;
      cert.witness = solutions_.front();
    } else if (exhausted_) {
      cert.result = Outcome::Exhausted;
    } else {
      cert.result = Outcome::Unsat;
      cert.trace = final_trace_;
    }
    return cert;
  }

  Enumeration enumerate(std::size_t limit) {
    stop_at_first_ = false;
    limit_ = limit;
    search(0);
    Enumeration out;
    out.count = solution_count_;
    out.complete = !exhausted_;
    out.witnesses = std::move(solutions_);
    out.nodes = nodes_;
    return out;
  }

 private:
  struct TrailEntry {
    std::uint32_t var;
    StateMask old;
    std::int32_t reason;  // clause id, or -1 for a decision
  };

  std::size_t var(const Literal& l) const { return pair_index(n_, l.i, l.j); }

  void assign(std::size_t v, StateMask next, std::int32_t reason) {
    trail_.push_back({static_cast<std::uint32_t>(v), dom_[v], reason});
    dom_[v] = next;
    for (auto c : occurrences_[v]) {
      if (!queued_[c]) {
        queued_[c] = 1;
        queue_.push_back(c);
      }
    }
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      dom_[trail_.back().var] = trail_.back().old;
      trail_.pop_back();
    }
  }

  /// Unit propagation to fixpoint; returns the conflicting clause or -1.
  std::int64_t propagate(bool all) {
    if (all) {
      for (std::uint32_t c = 0; c < clauses_.size(); ++c) {
        if (!queued_[c]) {
          queued_[c] = 1;
          queue_.push_back(c);
        }
      }
    }
    std::int64_t conflict = -1;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const std::uint32_t c = queue_[head];
      queued_[c] = 0;
      if (conflict >= 0) continue;
      const Instance& inst = clauses_[c];
      int unknown = -1;
      int unknown_count = 0;
      bool satisfied = false;
      for (std::uint8_t k = 0; k < inst.lit_count; ++k) {
        const StateMask d = dom_[var(inst.lits[k])];
        const StateMask meet = d & inst.lits[k].allowed;
        if (meet == d) {
          satisfied = true;
          break;
        }
        if (meet) {
          unknown = k;
          ++unknown_count;
        }
      }
      if (satisfied || unknown_count > 1) continue;
      if (unknown_count == 0) {
        conflict = c;
        continue;
      }
      const Literal& l = inst.lits[static_cast<std::size_t>(unknown)];
      const std::size_t v = var(l);
      assign(v, dom_[v] & l.allowed, static_cast<std::int32_t>(c));
    }
    queue_.clear();
    return conflict;
  }

  /// Derivation of the conflict: the trail entries it depends on, in order,
  /// followed by the conflicting instance.
  void record_trace(std::uint32_t conflict) {
    std::vector<char> needed(dom_.size(), 0);
    const Instance& last = clauses_[conflict];
    for (std::uint8_t k = 0; k < last.lit_count; ++k) needed[var(last.lits[k])] = 1;
    std::vector<std::size_t> kept;
    for (std::size_t t = trail_.size(); t-- > 0;) {
      const TrailEntry& e = trail_[t];
      if (!needed[e.var]) continue;
      kept.push_back(t);
      if (e.reason >= 0) {
        const Instance& inst = clauses_[static_cast<std::size_t>(e.reason)];
        for (std::uint8_t k = 0; k < inst.lit_count; ++k) needed[var(inst.lits[k])] = 1;
      }
    }
    std::reverse(kept.begin(), kept.end());
    final_trace_.clear();
    const StateMask base = initial_domain(cls_);
    for (std::size_t t : kept) {
      const TrailEntry& e = trail_[t];
      const auto [i, j] = pair_of_[e.var];
      if (e.reason < 0) {
        final_trace_.push_back({"decision", {i, j}, {{i, j, decision_value(t)}}});
      } else {
        const Instance& inst = clauses_[static_cast<std::size_t>(e.reason)];
        final_trace_.push_back(step_for(inst, e.var, base));
      }
    }
    // The conflicting instance demands its last literal, which is already false.
    const Literal& tail = last.lits[last.lit_count - 1];
    final_trace_.push_back(step_for(last, var(tail), base));
  }

  StateMask decision_value(std::size_t t) const {
    // A decision's value is the domain recorded by the next trail entry on
    // the same variable, or the current domain if none follows.
    const auto v = trail_[t].var;
    for (std::size_t u = t + 1; u < trail_.size(); ++u) {
      if (trail_[u].var == v) return trail_[u].old;
    }
    return dom_[v];
  }

  TraceStep step_for(const Instance& inst, std::size_t v, StateMask base) const {
    TraceStep s;
    s.axiom = to_string(inst.axiom);
    for (std::uint8_t k = 0; k < inst.elem_count; ++k) s.elements.push_back(inst.elems[k]);
    for (std::uint8_t k = 0; k < inst.lit_count; ++k) {
      if (var(inst.lits[k]) == v) s.forced.push_back({inst.lits[k].i, inst.lits[k].j, static_cast<StateMask>(inst.lits[k].allowed & base)});
    }
    return s;
  }

  // Returns true when the search should stop.
  bool search(std::size_t level) {
    std::size_t v = dom_.size();
    for (std::size_t idx : order_) {
      if (std::popcount(static_cast<unsigned>(dom_[idx])) > 1) {
        v = idx;
        break;
      }
    }
    if (v == dom_.size()) {
      ++solution_count_;
      if (solutions_.size() < limit_) solutions_.push_back(current_relation());
      return stop_at_first_;
    }
    const StateMask d = dom_[v];
    std::vector<StateMask> values;
    for (StateMask bit : {kLess, kGreater, kUnrelated}) {
      if (d & bit) values.push_back(bit);
    }
    if (remaining_.size() <= level) remaining_.resize(level + 1, 0);
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (nodes_ >= budget_) {
        exhausted_ = true;
        return true;
      }
      ++nodes_;
      const std::size_t mark = trail_.size();
      set_remaining(level, values.size() - k - 1);
      assign(v, values[k], -1);
      const std::int64_t conflict = propagate(level == 0);
      if (conflict < 0) {
        if (search(level + 1)) return true;
      } else if (open_levels_ == 0) {
        record_trace(static_cast<std::uint32_t>(conflict));
      }
      undo(mark);
    }
    set_remaining(level, 0);
    return false;
  }

  void set_remaining(std::size_t level, std::size_t r) {
    if ((remaining_[level] > 0) != (r > 0)) open_levels_ += r > 0 ? 1 : -1;
    remaining_[level] = r;
  }

  WindowRelation current_relation() const {
    WindowRelation rel(window_);
    for (std::size_t v = 0; v < dom_.size(); ++v) {
      const auto [i, j] = pair_of_[v];
      const StateMask d = dom_[v];
      rel.set(i, j, d == kLess ? Entry::Less : d == kGreater ? Entry::Greater : Entry::Unrelated);
    }
    return rel;
  }

  std::shared_ptr<const Window> window_;
  AxiomClass cls_;
  std::size_t n_;
  std::uint64_t budget_;
  std::vector<Instance> clauses_;
  std::vector<std::vector<std::uint32_t>> occurrences_;
  std::vector<StateMask> dom_;
  std::vector<std::size_t> order_;
  std::vector<std::pair<std::size_t, std::size_t>> pair_of_;
  std::vector<TrailEntry> trail_;
  std::vector<std::uint32_t> queue_;
  std::vector<char> queued_;
  std::vector<std::size_t> remaining_;
  long open_levels_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  bool stop_at_first_ = true;
  std::size_t limit_ = 1;
  std::uint64_t solution_count_ = 0;
  std::vector<WindowRelation> solutions_;
  std::vector<TraceStep> final_trace_;
};

}  // namespace detail

/// Sat with a verified-by-construction witness, Unsat with the derivation of
/// the last refuted branch, or Exhausted when the node budget runs out.
inline Certificate solve(const Window& window, AxiomClass cls, std::uint64_t budget = kDefaultBudget) {
  if (budget == 0) throw PreconditionError("node budget must be positive");
  return detail::Solver(std::make_shared<const Window>(window), cls, budget).solve();
}

/// Counts every relation on the window satisfying the class; keeps up to
/// `limit` witnesses in search order.
inline Enumeration enumerate(const Window& window, AxiomClass cls, std::size_t limit, std::uint64_t budget = kDefaultBudget) {
  if (budget == 0) throw PreconditionError("node budget must be positive");
  return detail::Solver(std::make_shared<const Window>(window), cls, budget).enumerate(limit);
}

struct ReplayResult {
  bool contradiction = false;
  std::string error;
};

/// Replays an Unsat trace from the unconstrained state: every instance step
/// must be a genuine window instance whose other literals are already false,
/// and the final step must empty a domain.
inline ReplayResult replay_trace(const Window& window, AxiomClass cls, const std::vector<TraceStep>& trace) {
  const std::size_t n = window.size();
  const StateMask base = initial_domain(cls);
  std::vector<StateMask> dom(pair_count(n), base);
  WindowAlgebra alg(window);
  auto fail = [](std::size_t k, const std::string& why) { return ReplayResult{false, "step " + std::to_string(k + 1) + ": " + why}; };
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const TraceStep& step = trace[k];
    if (step.forced.size() != 1) return fail(k, "expected exactly one forced entry");
    Forced f = step.forced.front();
    if (f.i >= n || f.j >= n || f.i == f.j) return fail(k, "forced pair outside the window");
    if (f.i > f.j) {
      std::swap(f.i, f.j);
      f.state = flip_mask(f.state);
    }
    const std::size_t v = pair_index(n, f.i, f.j);
    if (step.axiom == "decision") {
      if ((dom[v] & f.state) != f.state || std::popcount(static_cast<unsigned>(f.state)) != 1) return fail(k, "decision outside the domain");
      dom[v] = f.state;
      continue;
    }
    Axiom axiom;
    try {
      axiom = parse_axiom(step.axiom);
    } catch (const ParseError& e) {
      return fail(k, e.what());
    }
    for (auto e : step.elements) {
      if (e >= n) return fail(k, "element outside the window");
    }
    if (!class_has(cls, axiom)) return fail(k, std::string(to_string(axiom)) + " is not an axiom of " + to_string(cls));
    const auto inst = make_instance(window, alg, axiom, step.elements);
    if (!inst || inst->tautology) return fail(k, "not a window instance");
    const Literal* target = nullptr;
    for (std::uint8_t q = 0; q < inst->lit_count; ++q) {
      const Literal& l = inst->lits[q];
      if (l.i == f.i && l.j == f.j) {
        target = &l;
      } else if (dom[pair_index(n, l.i, l.j)] & l.allowed) {
        return fail(k, "instance is not unit: another literal is still possible");
      }
    }
    if (!target) return fail(k, "forced pair is not in the instance");
    if (static_cast<StateMask>(target->allowed & base) != f.state) return fail(k, "forced state differs from what the instance demands");
    const StateMask next = dom[v] & f.state;
    if (next == 0) {
      if (k + 1 != trace.size()) return fail(k, "contradiction before the last step");
      return {true, ""};
    }
    dom[v] = next;
  }
  return {false, "trace ends without a contradiction"};
}

struct Obstruction {
  std::optional<int> radius;
  std::optional<Certificate> certificate;
  std::vector<std::pair<int, Outcome>> tried;
};

/// Smallest radius <= max_radius whose ball refutes the class.
inline Obstruction find_obstruction(const GroupSpec& spec, AxiomClass cls, int max_radius, std::uint64_t budget = kDefaultBudget) {
  if (max_radius < 1) throw PreconditionError("max radius must be >= 1");
  Obstruction out;
  for (int r = 1; r <= max_radius; ++r) {
    Certificate c = solve(ball(spec, r), cls, budget);
    out.tried.emplace_back(r, c.result);
    if (c.result == Outcome::Unsat) {
      out.radius = r;
      out.certificate = std::move(c);
      break;
    }
  }
  return out;
}

}  // namespace orderlab
