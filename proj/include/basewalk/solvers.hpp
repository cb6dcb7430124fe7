#pragma once

#include <deque>
#include <map>

#include "basewalk/core.hpp"
#include "basewalk/instance.hpp"
#include "basewalk/matroid.hpp"

namespace basewalk {

// ---------------------------------------------------------------------------
// Greedy for interval-model MSM: repeatedly pick the copy maximizing
// benefit/cost, where benefit is the total rank gain over its lifetime.
// ---------------------------------------------------------------------------

struct GreedyResult {
  std::vector<int> chosen;              // indices into inst.elements
  std::vector<ElementSet> copy_sets;    // chosen copies alive at each t
  Cost interval_cost = 0;               // sum of chosen copy costs
};

inline GreedyResult greedy_msm(const IntervalInstance& inst) {
  const Matroid& mat = inst.matroid;
  const int T = inst.horizon;
  const int r = mat.rank();

  // Parent sets currently covered at each timestep (1-based index shifted).
  std::vector<ElementSet> covered(T);
  std::vector<int> rank_at(T, 0);
  std::vector<char> picked(inst.elements.size(), 0);

  auto benefit = [&](int idx) {
    const IntervalElement& el = inst.elements[idx];
    int gain = 0;
    for (int t = el.start; t <= el.end; ++t) {
      int ti = t - 1;
      if (rank_at[ti] == r || contains(covered[ti], el.parent)) continue;
      ElementSet ext = covered[ti];
      ext.insert(std::lower_bound(ext.begin(), ext.end(), el.parent),
                 el.parent);
      gain += mat.rank_of(ext) - rank_at[ti];
    }
    return gain;
  };

  auto take = [&](int idx) {
    picked[idx] = 1;
    const IntervalElement& el = inst.elements[idx];
    for (int t = el.start; t <= el.end; ++t) {
      int ti = t - 1;
      if (!contains(covered[ti], el.parent)) {
        covered[ti].insert(
            std::lower_bound(covered[ti].begin(), covered[ti].end(), el.parent),
            el.parent);
        rank_at[ti] = mat.rank_of(covered[ti]);
      }
    }
  };

  GreedyResult res;
  // Zero-cost copies have unbounded ratio; take the useful ones first in id
  // order.
  for (std::size_t i = 0; i < inst.elements.size(); ++i) {
    if (inst.elements[i].cost == 0 && benefit(static_cast<int>(i)) > 0) {
      take(static_cast<int>(i));
      res.chosen.push_back(static_cast<int>(i));
    }
  }

  auto done = [&] {
    for (int t = 0; t < T; ++t)
      if (rank_at[t] < r) return false;
    return true;
  };

  while (!done()) {
    int best = -1;
    // Compare gain_i / cost_i as exact cross-products.
    long long best_gain = 0;
    Cost best_cost = 1;
    for (std::size_t i = 0; i < inst.elements.size(); ++i) {
      const IntervalElement& el = inst.elements[i];
      if (picked[i] || !is_finite(el.cost) || el.cost == 0) continue;
      long long gain = benefit(static_cast<int>(i));
      if (gain <= 0) continue;
      if (best < 0 ||
          static_cast<long long>(gain) * best_cost >
              best_gain * static_cast<long long>(el.cost)) {
        best = static_cast<int>(i);
        best_gain = gain;
        best_cost = el.cost;
      }
    }
    if (best < 0)
      throw InfeasibleError("greedy_msm: alive sets cannot reach full rank");
    take(best);
    res.chosen.push_back(best);
  }

  std::sort(res.chosen.begin(), res.chosen.end());
  res.copy_sets.assign(T, {});
  for (int idx : res.chosen) {
    res.interval_cost = add_cost(res.interval_cost, inst.elements[idx].cost);
    for (int t = inst.elements[idx].start; t <= inst.elements[idx].end; ++t)
      res.copy_sets[t - 1].push_back(idx);
  }
  for (auto& s : res.copy_sets) normalize(s);
  return res;
}

// Maps an interval-model copy solution back to parent element sets, giving a
// spanning sequence on the original instance.
inline SolutionSequence copies_to_parents(const IntervalInstance& inst,
                                          const std::vector<ElementSet>& copy_sets) {
  SolutionSequence sol;
  sol.kind = SolutionKind::Spanning;
  for (const ElementSet& copies : copy_sets) {
    std::vector<int> idx(copies.begin(), copies.end());
    sol.sets.push_back(inst.parents_of(idx));
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Spanning sequence -> base sequence (Lemma-1 style charging). Requires a
// fixed matroid; computable online from B_{t-1} and S_t alone.
// ---------------------------------------------------------------------------

inline SolutionSequence spanning_to_bases(const MmmInstance& inst,
                                          const SolutionSequence& sol) {
  if (inst.time_varying())
    throw InvalidInputError(
        "spanning_to_bases requires the same matroid at each timestep");
  const Matroid& mat = inst.matroids.front();
  SolutionSequence out;
  out.kind = SolutionKind::Base;
  ElementSet prev;
  for (const ElementSet& st : sol.sets) {
    ElementSet keep = set_intersection(prev, st);
    ElementSet base = mat.extend_to_base(keep, st);
    out.sets.push_back(base);
    prev = std::move(base);
  }
  detail::sequence_cost(inst, out, &out.holding_cost, &out.acquisition_cost);
  return out;
}

// ---------------------------------------------------------------------------
// Exact optimum by shortest path over the layered base (or spanning-set)
// graph. Universal desk-scale oracle; also covers the two-round exact case.
// ---------------------------------------------------------------------------

struct ExactResult {
  SolutionSequence solution;
  Cost optimum = kInfCost;
};

namespace detail {

inline Cost transition_cost(const MmmInstance& inst, const ElementSet& prev,
                            const ElementSet& next, int t) {
  Cost c = 0;
  for (ElementId e : next) c = add_cost(c, inst.holding[t][e]);
  for (ElementId e : set_difference(next, prev))
    c = add_cost(c, inst.acquisition[e]);
  return c;
}

inline ExactResult exact_over_layers(
    const MmmInstance& inst, const std::vector<std::vector<ElementSet>>& layers,
    SolutionKind kind) {
  const int T = inst.horizon;
  std::vector<std::vector<Cost>> dist(T);
  std::vector<std::vector<int>> back(T);
  for (int t = 0; t < T; ++t) {
    dist[t].assign(layers[t].size(), kInfCost);
    back[t].assign(layers[t].size(), -1);
  }
  ElementSet empty;
  for (std::size_t j = 0; j < layers[0].size(); ++j)
    dist[0][j] = transition_cost(inst, empty, layers[0][j], 0);
  for (int t = 1; t < T; ++t) {
    for (std::size_t j = 0; j < layers[t].size(); ++j) {
      for (std::size_t i = 0; i < layers[t - 1].size(); ++i) {
        if (!is_finite(dist[t - 1][i])) continue;
        Cost step = transition_cost(inst, layers[t - 1][i], layers[t][j], t);
        Cost cand = add_cost(dist[t - 1][i], step);
        if (cand < dist[t][j]) {
          dist[t][j] = cand;
          back[t][j] = static_cast<int>(i);
        }
      }
    }
  }
  int best = -1;
  Cost best_cost = kInfCost;
  for (std::size_t j = 0; j < layers[T - 1].size(); ++j) {
    if (dist[T - 1][j] < best_cost) {
      best_cost = dist[T - 1][j];
      best = static_cast<int>(j);
    }
  }
  if (best < 0) throw InfeasibleError("exact solver: no feasible sequence");
  ExactResult res;
  res.optimum = best_cost;
  res.solution.kind = kind;
  res.solution.sets.assign(T, {});
  for (int t = T - 1; t >= 0; --t) {
    res.solution.sets[t] = layers[t][best];
    best = back[t][best];
  }
  detail::sequence_cost(inst, res.solution, &res.solution.holding_cost,
                        &res.solution.acquisition_cost);
  return res;
}

}  // namespace detail

// Exact MMM optimum: per-timestep layers are the bases of the matroid
// restricted to available (finite holding cost) elements.
inline ExactResult exact_dp(const MmmInstance& inst, std::size_t base_cap) {
  std::vector<std::vector<ElementSet>> layers(inst.horizon);
  for (int t = 0; t < inst.horizon; ++t)
    layers[t] = inst.matroid_at(t).enumerate_bases(inst.alive_at(t), base_cap);
  return detail::exact_over_layers(inst, layers, SolutionKind::Base);
}

// Exact MSM optimum: layers are all spanning subsets of the available
// elements. Exponential in m; oracle for small instances only.
inline ExactResult exact_dp_spanning(const MmmInstance& inst) {
  int m = inst.num_elements();
  if (m > 16)
    throw ResourceLimitError("exact_dp_spanning: ground set too large");
  std::vector<std::vector<ElementSet>> layers(inst.horizon);
  for (int t = 0; t < inst.horizon; ++t) {
    const Matroid& mat = inst.matroid_at(t);
    ElementSet alive = inst.alive_at(t);
    std::uint64_t limit = std::uint64_t{1} << alive.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
      ElementSet s;
      for (std::size_t i = 0; i < alive.size(); ++i)
        if (mask >> i & 1) s.push_back(alive[i]);
      if (mat.rank_of(s) == mat.rank()) layers[t].push_back(std::move(s));
    }
  }
  return detail::exact_over_layers(inst, layers, SolutionKind::Spanning);
}

// ---------------------------------------------------------------------------
// Min-cost flow (successive shortest augmenting paths with potentials).
// ---------------------------------------------------------------------------

namespace detail {

class MinCostFlow {
 public:
  explicit MinCostFlow(int n) : head_(n, -1) {}

  int add_arc(int from, int to, long long cap, long long cost) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, head_[from], cap, cost});
    head_[from] = id;
    arcs_.push_back({from, head_[to], 0, -cost});
    head_[to] = id + 1;
    return id;
  }

  long long flow_on(int arc_id) const { return arcs_[arc_id + 1].cap; }

  // Sends `amount` units from s to t; returns total cost or nullopt if the
  // required flow value is unreachable.
  std::optional<long long> solve(int s, int t, long long amount) {
    long long total = 0;
    int n = static_cast<int>(head_.size());
    while (amount > 0) {
      // Bellman-Ford handles the (integer, possibly zero) costs directly;
      // graph sizes here are tiny.
      std::vector<long long> dist(n, kUnreached);
      std::vector<int> pre(n, -1);
      dist[s] = 0;
      bool changed = true;
      for (int round = 0; round < n && changed; ++round) {
        changed = false;
        for (int u = 0; u < n; ++u) {
          if (dist[u] == kUnreached) continue;
          for (int id = head_[u]; id != -1; id = arcs_[id].next) {
            const Arc& a = arcs_[id];
            if (a.cap <= 0) continue;
            if (dist[u] + a.cost < dist[a.to]) {
              dist[a.to] = dist[u] + a.cost;
              pre[a.to] = id;
              changed = true;
            }
          }
        }
      }
      if (dist[t] == kUnreached) return std::nullopt;
      long long push = amount;
      for (int v = t; v != s;) {
        const Arc& a = arcs_[pre[v]];
        push = std::min(push, a.cap);
        v = arcs_[pre[v] ^ 1].to;
      }
      for (int v = t; v != s;) {
        arcs_[pre[v]].cap -= push;
        arcs_[pre[v] ^ 1].cap += push;
        v = arcs_[pre[v] ^ 1].to;
      }
      total += push * dist[t];
      amount -= push;
    }
    return total;
  }

 private:
  static constexpr long long kUnreached = std::numeric_limits<long long>::max() / 4;

  struct Arc {
    int to;
    int next;
    long long cap;
    long long cost;
  };

  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

}  // namespace detail

// Exact MMM for a fixed partition matroid via min-cost flow: one node pair
// per (element, timestep) with the holding cost on the splitting arc,
// transition arcs within a part priced by the acquisition cost on change.
inline ExactResult partition_flow_exact(const MmmInstance& inst) {
  if (inst.time_varying())
    throw InvalidInputError("partition_flow_exact requires a fixed matroid");
  const Matroid& mat = inst.matroids.front();
  if (mat.kind() != MatroidKind::Partition)
    throw InvalidInputError("partition_flow_exact requires a partition matroid");
  const int m = mat.size();
  const int T = inst.horizon;
  const int r = mat.rank();
  const auto& part_of = mat.part_of();
  const int parts = static_cast<int>(mat.capacities().size());

  // Node layout: source, per-part supply nodes, then in/out pairs per (e,t),
  // then sink.
  const int source = 0;
  auto part_node = [&](int j) { return 1 + j; };
  auto in_node = [&](ElementId e, int t) { return 1 + parts + 2 * (t * m + e); };
  auto out_node = [&](ElementId e, int t) { return in_node(e, t) + 1; };
  const int sink = 1 + parts + 2 * m * T;
  detail::MinCostFlow mcf(sink + 1);

  std::vector<std::vector<int>> hold_arc(T, std::vector<int>(m, -1));
  std::vector<std::map<std::pair<int, int>, int>> move_arc(T);

  for (int j = 0; j < parts; ++j)
    mcf.add_arc(source, part_node(j), mat.capacities()[j], 0);
  for (ElementId e = 0; e < m; ++e) {
    for (int t = 0; t < T; ++t) {
      if (!is_finite(inst.holding[t][e])) continue;
      hold_arc[t][e] = mcf.add_arc(in_node(e, t), out_node(e, t), 1,
                                   inst.holding[t][e]);
    }
    if (is_finite(inst.holding[0][e]))
      mcf.add_arc(part_node(part_of[e]), in_node(e, 0), 1, inst.acquisition[e]);
    if (is_finite(inst.holding[T - 1][e]))
      mcf.add_arc(out_node(e, T - 1), sink, 1, 0);
  }
  for (int t = 0; t + 1 < T; ++t) {
    for (ElementId e = 0; e < m; ++e) {
      if (!is_finite(inst.holding[t][e])) continue;
      for (ElementId f = 0; f < m; ++f) {
        if (part_of[f] != part_of[e]) continue;
        if (!is_finite(inst.holding[t + 1][f])) continue;
        long long cost = (e == f) ? 0 : inst.acquisition[f];
        int id = mcf.add_arc(out_node(e, t), in_node(f, t + 1), 1, cost);
        move_arc[t][{e, f}] = id;
      }
    }
  }

  auto total = mcf.solve(source, sink, r);
  if (!total) throw InfeasibleError("partition_flow_exact: no feasible flow");

  ExactResult res;
  res.optimum = static_cast<Cost>(*total);
  res.solution.kind = SolutionKind::Base;
  res.solution.sets.assign(T, {});
  for (int t = 0; t < T; ++t)
    for (ElementId e = 0; e < m; ++e)
      if (hold_arc[t][e] >= 0 && mcf.flow_on(hold_arc[t][e]) > 0)
        res.solution.sets[t].push_back(e);
  detail::sequence_cost(inst, res.solution, &res.solution.holding_cost,
                        &res.solution.acquisition_cost);
  return res;
}

}  // namespace basewalk
