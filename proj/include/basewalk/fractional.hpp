#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include "basewalk/core.hpp"
#include "basewalk/matroid.hpp"

namespace basewalk {

inline constexpr double kEpsNum = 1e-9;

// One covering constraint sum_{e in S} x_e >= rhs of the spanning-set
// polytope description. rhs = r(E) - r(E_t \ S) for alive set E_t.
struct CoveringConstraint {
  ElementSet elems;
  int rhs = 0;
  double violation = 0.0;  // rhs - xt(S) at emission time, on the clamped x
};

struct ConstraintLogEntry {
  int timestep = 0;
  int set_size = 0;
  int rhs = 0;
  double x_before = 0.0;  // x(S) on the unclamped x, before the raise
  double x_after = 0.0;
};

// Componentwise min(2x, 1).
inline std::vector<double> clamp_double(const std::vector<double>& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = std::min(2.0 * x[i], 1.0);
  return out;
}

// True iff x(S) <= rhs - 1/2 + eps. Holds for every constraint whose clamped
// vector is violated; checked on each emission.
inline bool assert_half_gap(const std::vector<double>& x,
                            const CoveringConstraint& cons) {
  double sum = 0.0;
  for (ElementId e : cons.elems) sum += x[e];
  return sum <= cons.rhs - 0.5 + kEpsNum;
}

namespace detail {

inline double set_value(const std::vector<double>& x, const ElementSet& s) {
  double sum = 0.0;
  for (ElementId e : s) sum += x[e];
  return sum;
}

// Enumerates set partitions of {0..n-1} as restricted growth strings and
// calls fn with the part label of every vertex.
inline void for_each_set_partition(
    int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> label(n, 0);
  std::vector<int> max_label(n, 0);
  fn(label);
  int i = n - 1;
  while (i > 0) {
    if (label[i] <= max_label[i - 1]) {
      ++label[i];
      max_label[i] = std::max(max_label[i - 1], label[i]);
      for (int j = i + 1; j < n; ++j) {
        label[j] = 0;
        max_label[j] = max_label[i];
      }
      fn(label);
      i = n - 1;
    } else {
      --i;
    }
  }
}

struct SeparationCandidate {
  double objective = 0.0;  // xt(S) - rhs
  ElementSet elems;
  int rhs = 0;
};

inline bool better(const SeparationCandidate& a, const SeparationCandidate& b) {
  if (a.objective < b.objective - kEpsNum) return true;
  if (a.objective > b.objective + kEpsNum) return false;
  return a.elems < b.elems;  // deterministic lexicographic tie-break
}

}  // namespace detail

inline std::optional<CoveringConstraint> find_violated_brute(
    const Matroid& mat, const std::vector<double>& xt, const ElementSet& alive);

// Separation for the spanning-set polytope: returns the most-violated
// constraint over S contained in `alive`, or nullopt if xt restricted to the
// alive set lies in P_ss. RHS values are exact integer ranks.
inline std::optional<CoveringConstraint> find_violated(
    const Matroid& mat, const std::vector<double>& xt,
    const ElementSet& alive) {
  if (static_cast<int>(xt.size()) != mat.size())
    throw InvalidInputError("find_violated: x size mismatch");
  const int r = mat.rank();
  if (mat.rank_of(alive) != r)
    throw InfeasibleError("find_violated: alive set does not span");

  std::optional<detail::SeparationCandidate> best;
  auto consider = [&](ElementSet s, int rhs) {
    if (rhs < 1) return;
    detail::SeparationCandidate cand;
    cand.objective = detail::set_value(xt, s) - rhs;
    cand.elems = std::move(s);
    cand.rhs = rhs;
    if (!best || detail::better(cand, *best)) best = std::move(cand);
  };

  switch (mat.kind()) {
    case MatroidKind::Uniform: {
      // rhs(s) = r - min(|alive| - s, k); only prefixes of the alive
      // elements sorted by (xt, id) can be minimizers.
      ElementSet order = alive;
      std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
        return xt[a] < xt[b];
      });
      int n = static_cast<int>(order.size());
      ElementSet prefix;
      for (int s = 1; s <= n; ++s) {
        prefix.push_back(order[s - 1]);
        int rhs = r - std::min(n - s, mat.uniform_k());
        if (rhs >= 1) {
          ElementSet sorted = prefix;
          normalize(sorted);
          consider(std::move(sorted), rhs);
        }
      }
      break;
    }
    case MatroidKind::Partition: {
      // The objective separates across parts; pick the best deletion count
      // per part independently.
      std::size_t parts = mat.capacities().size();
      std::vector<ElementSet> members(parts);
      for (ElementId e : alive) members[mat.part_of()[e]].push_back(e);
      ElementSet chosen;
      int kept_rank = 0;
      for (std::size_t j = 0; j < parts; ++j) {
        ElementSet order = members[j];
        std::stable_sort(order.begin(), order.end(),
                         [&](ElementId a, ElementId b) { return xt[a] < xt[b]; });
        int nj = static_cast<int>(order.size());
        int cap = mat.capacities()[j];
        // g(s) = xt(prefix of size s) + min(nj - s, cap); minimize per part.
        double best_val = std::min(nj, cap);
        int best_s = 0;
        double prefix = 0.0;
        for (int s = 1; s <= nj; ++s) {
          prefix += xt[order[s - 1]];
          double val = prefix + std::min(nj - s, cap);
          if (val < best_val - kEpsNum) {
            best_val = val;
            best_s = s;
          }
        }
        chosen.insert(chosen.end(), order.begin(), order.begin() + best_s);
        kept_rank += std::min(nj - best_s, cap);
      }
      normalize(chosen);
      consider(std::move(chosen), r - kept_rank);
      break;
    }
    case MatroidKind::Graphic: {
      // Minimizers are crossing sets of vertex partitions; enumerate all
      // set partitions (desk scale only).
      int n = mat.num_vertices();
      if (n > 12) {
        if (alive.size() <= 22) return find_violated_brute(mat, xt, alive);
        throw ResourceLimitError(
            "find_violated: graphic separation limited to <= 12 vertices");
      }
      const auto& edges = mat.edges();
      detail::for_each_set_partition(n, [&](const std::vector<int>& label) {
        ElementSet crossing, kept;
        for (ElementId e : alive) {
          if (label[edges[e].first] != label[edges[e].second])
            crossing.push_back(e);
          else
            kept.push_back(e);
        }
        if (crossing.empty()) return;
        consider(std::move(crossing), r - mat.rank_of(kept));
      });
      break;
    }
  }

  if (!best || best->objective >= -kEpsNum) return std::nullopt;
  CoveringConstraint cons;
  cons.elems = std::move(best->elems);
  cons.rhs = best->rhs;
  cons.violation = -best->objective;
  return cons;
}

// Exhaustive reference separation; test oracle for small alive sets.
inline std::optional<CoveringConstraint> find_violated_brute(
    const Matroid& mat, const std::vector<double>& xt,
    const ElementSet& alive) {
  const int r = mat.rank();
  if (mat.rank_of(alive) != r)
    throw InfeasibleError("find_violated_brute: alive set does not span");
  if (alive.size() > 22)
    throw ResourceLimitError("find_violated_brute: alive set too large");
  std::optional<detail::SeparationCandidate> best;
  std::uint64_t limit = std::uint64_t{1} << alive.size();
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    ElementSet s, rest;
    for (std::size_t i = 0; i < alive.size(); ++i) {
      if (mask >> i & 1)
        s.push_back(alive[i]);
      else
        rest.push_back(alive[i]);
    }
    int rhs = r - mat.rank_of(rest);
    if (rhs < 1) continue;
    detail::SeparationCandidate cand;
    cand.objective = detail::set_value(xt, s) - rhs;
    cand.elems = std::move(s);
    cand.rhs = rhs;
    if (!best || detail::better(cand, *best)) best = std::move(cand);
  }
  if (!best || best->objective >= -kEpsNum) return std::nullopt;
  CoveringConstraint cons;
  cons.elems = std::move(best->elems);
  cons.rhs = best->rhs;
  cons.violation = -best->objective;
  return cons;
}

// Monotone fractional state for one online run.
struct FractionalState {
  std::vector<double> x;
  std::vector<ConstraintLogEntry> log;
  std::vector<Cost> acquisition_spend;  // fractional a-weighted raise per step
  int constraints_this_step = 0;

  explicit FractionalState(std::size_t m) : x(m, 0.0) {}
};

// Multiplicative variable-raising rule for one violated covering constraint.
// Discretizes the exponential primal-dual update: coordinates with smaller
// acquisition cost rise faster; no coordinate ever decreases.
inline void raise_on_constraint(FractionalState& state,
                                const CoveringConstraint& cons,
                                const std::vector<Cost>& acquisition) {
  Cost a_min = kInfCost;
  for (ElementId e : cons.elems) {
    Cost a = acquisition[e];
    if (is_finite(a) && a > 0) a_min = std::min(a_min, a);
  }
  // All-zero-cost sets can be raised for free; treat the step scale as 1.
  double eta = is_finite(a_min) ? 0.01 * static_cast<double>(a_min) : 1.0;
  double target = static_cast<double>(cons.rhs);
  std::size_t size = cons.elems.size();
  int guard = 0;
  while (detail::set_value(state.x, cons.elems) < target - kEpsNum) {
    bool moved = false;
    for (ElementId e : cons.elems) {
      if (!is_finite(acquisition[e])) continue;
      double& xe = state.x[e];
      if (xe >= 1.0) continue;
      double cost = std::max<double>(static_cast<double>(acquisition[e]), eta);
      xe = std::min(1.0, xe * (1.0 + eta / cost) +
                             eta / (cost * static_cast<double>(size)));
      moved = true;
    }
    if (!moved)
      throw InfeasibleError("raise_on_constraint: constraint unsatisfiable");
    if (++guard > 100000000)
      throw InternalError("raise_on_constraint: update failed to converge");
  }
}

// Adaptive loop for one timestep: emit most-violated constraints for the
// clamped vector until min(2x,1) restricted to the alive set is feasible.
// Returns the constraints emitted this step.
inline std::vector<CoveringConstraint> fractional_step(
    FractionalState& state, const Matroid& mat, const ElementSet& alive,
    const std::vector<Cost>& acquisition, int timestep) {
  std::vector<CoveringConstraint> emitted;
  std::vector<double> x_before_step = state.x;
  // Each emission raises x on the alive set by >= 1/2, so 2|E_t| bounds the
  // loop; exceeding it means the half-gap progress argument broke.
  int budget = 2 * static_cast<int>(alive.size());
  state.constraints_this_step = 0;
  while (true) {
    std::vector<double> xt = clamp_double(state.x);
    // Coordinates outside the alive set are treated as zero.
    std::vector<double> xt_alive(xt.size(), 0.0);
    for (ElementId e : alive) xt_alive[e] = xt[e];
    auto cons = find_violated(mat, xt_alive, alive);
    if (!cons) break;
    if (!assert_half_gap(state.x, *cons))
      throw InternalError("fractional_step: half-gap lemma violated");
    ConstraintLogEntry entry;
    entry.timestep = timestep;
    entry.set_size = static_cast<int>(cons->elems.size());
    entry.rhs = cons->rhs;
    entry.x_before = detail::set_value(state.x, cons->elems);
    raise_on_constraint(state, *cons, acquisition);
    entry.x_after = detail::set_value(state.x, cons->elems);
    state.log.push_back(entry);
    emitted.push_back(std::move(*cons));
    if (++state.constraints_this_step > budget)
      throw InternalError("fractional_step: constraint budget 2m exceeded");
  }
  // Fractional acquisition spend of this step, rounded up to integer cost.
  double spend = 0.0;
  for (std::size_t e = 0; e < state.x.size(); ++e)
    if (is_finite(acquisition[e]))
      spend += static_cast<double>(acquisition[e]) *
               (state.x[e] - x_before_step[e]);
  state.acquisition_spend.push_back(static_cast<Cost>(std::llround(spend)));
  return emitted;
}

}  // namespace basewalk
