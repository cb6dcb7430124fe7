#pragma once

#include <string>

#include "basewalk/core.hpp"
#include "basewalk/matroid.hpp"

namespace basewalk {

// A multistage maintenance instance. `matroids` holds either a single
// matroid (fixed over time) or one per timestep (time-varying, MSM only).
struct MmmInstance {
  std::vector<Matroid> matroids;
  int horizon = 0;                     // T
  std::vector<Cost> acquisition;       // a(e), finite nonnegative
  std::vector<std::vector<Cost>> holding;  // holding[t][e], t in [0, T)
  Cost cost_scale = 1;  // integer units per abstract cost unit (metadata)

  bool time_varying() const { return matroids.size() > 1; }

  const Matroid& matroid_at(int t) const {
    return time_varying() ? matroids.at(static_cast<std::size_t>(t))
                          : matroids.front();
  }

  int num_elements() const { return matroids.front().size(); }

  // Elements with finite holding cost at timestep t (0-based).
  ElementSet alive_at(int t) const {
    ElementSet out;
    for (ElementId e = 0; e < num_elements(); ++e)
      if (is_finite(holding[t][e])) out.push_back(e);
    return out;
  }

  void validate() const {
    if (matroids.empty()) throw InvalidInputError("instance has no matroid");
    if (horizon < 1) throw InvalidInputError("instance horizon must be >= 1");
    if (time_varying() && static_cast<int>(matroids.size()) != horizon)
      throw InvalidInputError("matroid list must have length 1 or T");
    int m = num_elements();
    for (const Matroid& mat : matroids)
      if (mat.size() != m)
        throw InvalidInputError("all matroids must share the ground set");
    if (static_cast<int>(acquisition.size()) != m)
      throw InvalidInputError("acquisition cost vector size mismatch");
    for (Cost a : acquisition)
      if (a < 0 || !is_finite(a))
        throw InvalidInputError("acquisition costs must be finite and >= 0");
    if (static_cast<int>(holding.size()) != horizon)
      throw InvalidInputError("holding cost matrix must have T rows");
    for (int t = 0; t < horizon; ++t) {
      if (static_cast<int>(holding[t].size()) != m)
        throw InvalidInputError("holding cost row size mismatch");
      for (Cost c : holding[t])
        if (c < 0 && is_finite(c))
          throw InvalidInputError("holding costs must be >= 0");
      if (!matroid_at(t).is_spanning(alive_at(t)))
        throw InfeasibleError("alive set does not span at timestep " +
                              std::to_string(t + 1));
    }
  }
};

enum class SolutionKind { Spanning, Base };

struct SolutionSequence {
  SolutionKind kind = SolutionKind::Spanning;
  std::vector<ElementSet> sets;  // S_1..S_T (S_0 = empty by convention)
  Cost holding_cost = 0;
  Cost acquisition_cost = 0;

  Cost total_cost() const { return add_cost(holding_cost, acquisition_cost); }
};

namespace detail {

inline Cost sequence_cost(const MmmInstance& inst, const SolutionSequence& sol,
                          Cost* holding_out, Cost* acquisition_out) {
  Cost hold = 0, acq = 0;
  ElementSet prev;
  for (int t = 0; t < inst.horizon; ++t) {
    const ElementSet& st = sol.sets[t];
    for (ElementId e : st) hold = add_cost(hold, inst.holding[t][e]);
    for (ElementId e : set_difference(st, prev))
      acq = add_cost(acq, inst.acquisition[e]);
    prev = st;
  }
  if (holding_out) *holding_out = hold;
  if (acquisition_out) *acquisition_out = acq;
  return add_cost(hold, acq);
}

}  // namespace detail

// Objective sum_t ( c_t(S_t) + a(S_t \ S_{t-1}) ) for spanning sequences.
inline Cost msm_cost(const MmmInstance& inst, const SolutionSequence& sol) {
  if (static_cast<int>(sol.sets.size()) != inst.horizon)
    throw InvalidInputError("solution length does not match horizon");
  for (int t = 0; t < inst.horizon; ++t)
    if (!inst.matroid_at(t).is_spanning(sol.sets[t]))
      throw InfeasibleError("solution set does not span at timestep " +
                            std::to_string(t + 1));
  return detail::sequence_cost(inst, sol, nullptr, nullptr);
}

// Same objective for base sequences, with a base-cardinality check.
inline Cost mmm_cost(const MmmInstance& inst, const SolutionSequence& sol) {
  if (static_cast<int>(sol.sets.size()) != inst.horizon)
    throw InvalidInputError("solution length does not match horizon");
  for (int t = 0; t < inst.horizon; ++t) {
    const Matroid& mat = inst.matroid_at(t);
    if (static_cast<int>(sol.sets[t].size()) != mat.rank())
      throw InvalidInputError("solution set is not a base at timestep " +
                              std::to_string(t + 1));
    if (mat.rank_of(sol.sets[t]) != mat.rank())
      throw InvalidInputError("solution set is dependent at timestep " +
                              std::to_string(t + 1));
  }
  return detail::sequence_cost(inst, sol, nullptr, nullptr);
}

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;
  Cost holding_cost = 0;
  Cost acquisition_cost = 0;
  Cost total_cost = 0;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

// Structured feasibility + cost check; never throws on bad solutions.
inline ValidationReport validate_solution(const MmmInstance& inst,
                                          const SolutionSequence& sol) {
  ValidationReport rep;
  if (static_cast<int>(sol.sets.size()) != inst.horizon) {
    rep.fail("solution length does not match horizon");
    return rep;
  }
  for (int t = 0; t < inst.horizon; ++t) {
    const Matroid& mat = inst.matroid_at(t);
    const ElementSet& st = sol.sets[t];
    for (ElementId e : st) {
      if (e < 0 || e >= inst.num_elements()) {
        rep.fail("element out of range at timestep " + std::to_string(t + 1));
        return rep;
      }
      if (!is_finite(inst.holding[t][e]))
        rep.fail("element " + std::to_string(e) +
                 " used while unavailable at timestep " + std::to_string(t + 1));
    }
    if (mat.rank_of(st) != mat.rank())
      rep.fail("set does not span at timestep " + std::to_string(t + 1));
    if (sol.kind == SolutionKind::Base &&
        static_cast<int>(st.size()) != mat.rank())
      rep.fail("set is not a base at timestep " + std::to_string(t + 1));
  }
  rep.total_cost =
      detail::sequence_cost(inst, sol, &rep.holding_cost, &rep.acquisition_cost);
  return rep;
}

// ---------------------------------------------------------------------------
// Interval model: derived elements with a lifetime and acquisition cost only.
// ---------------------------------------------------------------------------

struct IntervalElement {
  ElementId parent = 0;
  int start = 1;  // l_e, 1-based inclusive
  int end = 1;    // r_e, 1-based inclusive
  Cost cost = 0;  // acquisition cost of this copy (may be kInfCost)

  bool alive_at(int t) const { return start <= t && t <= end; }
};

struct IntervalInstance {
  Matroid matroid;  // over parent elements; copies are parallel to parents
  int horizon = 0;
  std::vector<IntervalElement> elements;

  // Copies with finite cost alive at 1-based timestep t.
  std::vector<int> alive_at(int t) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i].alive_at(t) && is_finite(elements[i].cost))
        out.push_back(static_cast<int>(i));
    return out;
  }

  ElementSet parents_of(const std::vector<int>& copies) const {
    ElementSet out;
    for (int i : copies) out.push_back(elements[i].parent);
    normalize(out);
    return out;
  }
};

// Offline exact reduction: one copy per (e, l, r) with finite summed holding
// cost, priced a(e) + sum_{t=l..r} c_t(e). Copies through an unavailable
// timestep are pruned.
inline IntervalInstance to_interval_exact(const MmmInstance& inst) {
  if (inst.time_varying())
    throw InvalidInputError("interval reduction requires a fixed matroid");
  IntervalInstance out;
  out.matroid = inst.matroids.front();
  out.horizon = inst.horizon;
  for (ElementId e = 0; e < inst.num_elements(); ++e) {
    for (int l = 1; l <= inst.horizon; ++l) {
      Cost sum = inst.acquisition[e];
      for (int r = l; r <= inst.horizon; ++r) {
        Cost c = inst.holding[r - 1][e];
        if (!is_finite(c)) break;
        sum = add_cost(sum, c);
        out.elements.push_back({e, l, r, sum});
      }
    }
  }
  return out;
}

// Online approximate reduction, one timestep at a time. Intervals for each
// parent partition [1, T]; the copy opened at time s costs a(e) + c_s(e).
class OnlineIntervalReducer {
 public:
  explicit OnlineIntervalReducer(Matroid matroid, std::vector<Cost> acquisition)
      : acquisition_(std::move(acquisition)) {
    result_.matroid = std::move(matroid);
    if (static_cast<int>(acquisition_.size()) != result_.matroid.size())
      throw InvalidInputError("acquisition cost vector size mismatch");
    open_copy_.assign(acquisition_.size(), -1);
    open_sum_.assign(acquisition_.size(), 0);
  }

  // Feeds the holding costs of the next timestep. Returns, per parent, the
  // index of the copy alive at this timestep.
  std::vector<int> observe(const std::vector<Cost>& holding) {
    if (holding.size() != acquisition_.size())
      throw InvalidInputError("holding cost row size mismatch");
    ++now_;
    result_.horizon = now_;
    std::vector<int> alive(acquisition_.size());
    for (ElementId e = 0; e < static_cast<int>(acquisition_.size()); ++e) {
      Cost c = holding[e];
      Cost a = acquisition_[e];
      int open = open_copy_[e];
      bool extend = open >= 0 && is_finite(c) &&
                    is_finite(add_cost(open_sum_[e], c)) &&
                    add_cost(open_sum_[e], c) <= a;
      if (extend) {
        result_.elements[open].end = now_;
        open_sum_[e] = add_cost(open_sum_[e], c);
        alive[e] = open;
        continue;
      }
      // Start a new interval at time `now_`. When c >= a the interval is a
      // singleton and closes immediately.
      IntervalElement copy;
      copy.parent = e;
      copy.start = now_;
      copy.end = now_;
      copy.cost = add_cost(a, c);
      int idx = static_cast<int>(result_.elements.size());
      result_.elements.push_back(copy);
      alive[e] = idx;
      if (is_finite(c) && c < a) {
        open_copy_[e] = idx;
        open_sum_[e] = c;
      } else {
        open_copy_[e] = -1;
        open_sum_[e] = 0;
      }
    }
    return alive;
  }

  const IntervalInstance& instance() const { return result_; }

 private:
  std::vector<Cost> acquisition_;
  IntervalInstance result_;
  std::vector<int> open_copy_;  // per parent, index of the extendable copy
  std::vector<Cost> open_sum_;  // holding cost accumulated by that copy
  int now_ = 0;
};

// Convenience: run the online reducer over a fully known instance.
inline IntervalInstance to_interval_online(const MmmInstance& inst) {
  if (inst.time_varying())
    throw InvalidInputError("interval reduction requires a fixed matroid");
  OnlineIntervalReducer red(inst.matroids.front(), inst.acquisition);
  for (int t = 0; t < inst.horizon; ++t) red.observe(inst.holding[t]);
  return red.instance();
}

}  // namespace basewalk
