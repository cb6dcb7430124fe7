#pragma once

#include <functional>
#include <random>

#include "basewalk/core.hpp"
#include "basewalk/instance.hpp"
#include "basewalk/matroid.hpp"

namespace basewalk {

// ---------------------------------------------------------------------------
// Set-cover gadget: graphic instance whose optimal cost equals the minimum
// set-cover size. Vertex 0 is the root; vertex 1+i belongs to set i. The
// graph is a multigraph (short-term edges may parallel the spokes).
// ---------------------------------------------------------------------------

inline MmmInstance set_cover_instance(int num_universe,
                                      const std::vector<std::vector<int>>& sets) {
  const int nsets = static_cast<int>(sets.size());
  std::vector<std::vector<int>> covering(num_universe);
  for (int i = 0; i < nsets; ++i)
    for (int u : sets[i]) {
      if (u < 0 || u >= num_universe)
        throw InvalidInputError("set_cover_instance: universe id out of range");
      covering[u].push_back(i);
    }
  for (int u = 0; u < num_universe; ++u)
    if (covering[u].empty())
      throw InvalidInputError("set_cover_instance: element " +
                              std::to_string(u) + " is uncoverable");

  const int T = num_universe;
  const int root = 0;
  auto set_vertex = [](int i) { return 1 + i; };
  std::vector<std::pair<int, int>> edges;
  std::vector<Cost> acquisition;
  std::vector<std::vector<Cost>> holding(T);

  // Long-term spokes (root, s_i): a = 1, free to hold at every timestep.
  for (int i = 0; i < nsets; ++i) {
    edges.emplace_back(root, set_vertex(i));
    acquisition.push_back(1);
  }
  // Short-term edges alive only at their timestep: clique on F_j and clique
  // on {root} + complement(F_j), all free.
  std::vector<std::vector<std::size_t>> short_at(T);
  for (int j = 0; j < T; ++j) {
    std::vector<char> in_fj(nsets, 0);
    for (int i : covering[j]) in_fj[i] = 1;
    auto add_short = [&](int u, int v) {
      short_at[j].push_back(edges.size());
      edges.emplace_back(u, v);
      acquisition.push_back(0);
    };
    for (std::size_t a = 0; a < covering[j].size(); ++a)
      for (std::size_t b = a + 1; b < covering[j].size(); ++b)
        add_short(set_vertex(covering[j][a]), set_vertex(covering[j][b]));
    std::vector<int> side{root};
    for (int i = 0; i < nsets; ++i)
      if (!in_fj[i]) side.push_back(set_vertex(i));
    for (std::size_t a = 0; a < side.size(); ++a)
      for (std::size_t b = a + 1; b < side.size(); ++b)
        add_short(side[a], side[b]);
  }
  for (int t = 0; t < T; ++t) {
    holding[t].assign(edges.size(), kInfCost);
    for (int i = 0; i < nsets; ++i) holding[t][i] = 0;
    for (std::size_t idx : short_at[t]) holding[t][idx] = 0;
  }

  MmmInstance inst;
  inst.matroids.push_back(Matroid::Graphic(1 + nsets, std::move(edges)));
  inst.horizon = T;
  inst.acquisition = std::move(acquisition);
  inst.holding = std::move(holding);
  inst.validate();
  return inst;
}

// ---------------------------------------------------------------------------
// Integrality-gap family: star spokes at unit cost against cheap chords whose
// availability follows the balanced bipartitions of {v_1..v_n}. Costs are
// scaled by n*T so the chord cost 1/(nT) stays integral; the scale is kept in
// the instance metadata. Also emits the cheap fractional witness.
// ---------------------------------------------------------------------------

struct GapInstance {
  MmmInstance instance;
  std::vector<std::vector<double>> fractional;  // z_t per timestep
  int n = 0;
};

inline GapInstance integrality_gap_instance(int n) {
  if (n < 2 || n % 2 != 0 || n > 12)
    throw InvalidInputError("integrality_gap_instance: n must be even, 2..12");
  // Lexicographic enumeration of the n/2-subsets U_t of {1..n}.
  std::vector<std::vector<int>> halves;
  std::vector<int> pick(n / 2);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n / 2) {
      halves.push_back(pick);
      return;
    }
    for (int v = start; v <= n; ++v) {
      pick[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(1, 0);
  const int T = static_cast<int>(halves.size());
  const Cost scale = static_cast<Cost>(n) * T;

  std::vector<std::pair<int, int>> edges;
  std::vector<Cost> acquisition;
  std::vector<int> spoke(n + 1, -1), chord_id;
  for (int i = 1; i <= n; ++i) {
    spoke[i] = static_cast<int>(edges.size());
    edges.emplace_back(0, i);
    acquisition.push_back(scale);  // a = 1 in scaled units
  }
  std::vector<std::vector<int>> chord(n + 1, std::vector<int>(n + 1, -1));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      chord[i][j] = static_cast<int>(edges.size());
      edges.emplace_back(i, j);
      acquisition.push_back(1);  // a = 1/(nT) in scaled units
    }

  const int m = static_cast<int>(edges.size());
  std::vector<std::vector<Cost>> holding(T, std::vector<Cost>(m, 0));
  std::vector<std::vector<double>> fractional(T, std::vector<double>(m, 0.0));
  for (int t = 0; t < T; ++t) {
    std::vector<char> in_u(n + 1, 0);
    for (int v : halves[t]) in_u[v] = 1;
    for (int i = 1; i <= n; ++i) {
      fractional[t][spoke[i]] = 2.0 / n;
      for (int j = i + 1; j <= n; ++j) {
        if (in_u[i] != in_u[j])
          holding[t][chord[i][j]] = kInfCost;  // crossing chords unavailable
        else
          fractional[t][chord[i][j]] = 4.0 / n;
      }
    }
  }

  GapInstance out;
  out.n = n;
  out.instance.matroids.push_back(Matroid::Graphic(n + 1, std::move(edges)));
  out.instance.horizon = T;
  out.instance.acquisition = std::move(acquisition);
  out.instance.holding = std::move(holding);
  out.instance.cost_scale = scale;
  out.instance.validate();
  out.fractional = std::move(fractional);
  return out;
}

// ---------------------------------------------------------------------------
// Adversary for deterministic online algorithms on the 1-uniform matroid:
// the element chosen in round t becomes unavailable from round t+1 on, as
// long as at least two unpoisoned elements remain.
// ---------------------------------------------------------------------------

// Callback sees the 1-based timestep, the holding costs of that timestep and
// its previous choice (-1 at the start), and returns the element to hold.
using OnlineChoice =
    std::function<ElementId(int, const std::vector<Cost>&, ElementId)>;

struct AdversaryTranscript {
  MmmInstance realized;        // the instance the adversary ended up playing
  std::vector<ElementId> choices;
  Cost algorithm_cost = 0;
  Cost offline_opt = 0;        // min over elements of a(e) + total holding
};

inline AdversaryTranscript adversarial_uniform_stream(int m, int horizon,
                                                      const OnlineChoice& choose) {
  if (m < 1 || horizon < 1)
    throw InvalidInputError("adversarial_uniform_stream: m, T must be >= 1");
  AdversaryTranscript tr;
  tr.realized.matroids.push_back(Matroid::Uniform(m, 1));
  tr.realized.horizon = horizon;
  tr.realized.acquisition.assign(m, 1);

  std::vector<char> poisoned(m, 0);
  int unpoisoned = m;
  std::vector<Cost> current(m, 0);
  ElementId prev = -1;
  for (int t = 1; t <= horizon; ++t) {
    tr.realized.holding.push_back(current);
    ElementId pick = choose(t, current, prev);
    if (pick < 0 || pick >= m)
      throw ProtocolError("adversary: callback chose an element out of range");
    if (!is_finite(current[pick]))
      throw ProtocolError("adversary: callback chose a poisoned element");
    tr.choices.push_back(pick);
    tr.algorithm_cost = add_cost(tr.algorithm_cost, current[pick]);
    if (pick != prev) tr.algorithm_cost = add_cost(tr.algorithm_cost, 1);
    prev = pick;
    if (!poisoned[pick] && unpoisoned >= 2) {
      poisoned[pick] = 1;
      --unpoisoned;
      current[pick] = kInfCost;
    }
  }
  tr.offline_opt = kInfCost;
  for (ElementId e = 0; e < m; ++e) {
    Cost total = tr.realized.acquisition[e];
    for (int t = 0; t < horizon; ++t)
      total = add_cost(total, tr.realized.holding[t][e]);
    tr.offline_opt = std::min(tr.offline_opt, total);
  }
  tr.realized.validate();
  return tr;
}

// Deterministic greedy baseline for the 1-uniform adversary: keep the current
// element while it stays available, otherwise switch to the cheapest one.
inline OnlineChoice greedy_online_uniform() {
  return [](int, const std::vector<Cost>& c, ElementId prev) -> ElementId {
    if (prev >= 0 && is_finite(c[prev])) return prev;
    ElementId best = -1;
    for (ElementId e = 0; e < static_cast<ElementId>(c.size()); ++e)
      if (is_finite(c[e]) && (best < 0 || c[e] < c[best])) best = e;
    if (best < 0) throw InfeasibleError("no available element");
    return best;
  };
}

// ---------------------------------------------------------------------------
// Time-varying 3-dimensional-matching gadget: universe = hyperedges, three
// partition matroids (grouping by the X, Y, Z endpoint) cycled over time.
// ---------------------------------------------------------------------------

struct Hyperedge {
  int x = 0, y = 0, z = 0;
};

inline MmmInstance three_dm_instance(int k, const std::vector<Hyperedge>& edges,
                                     int horizon) {
  if (horizon < 3 || horizon % 3 != 0)
    throw InvalidInputError("three_dm_instance: T must be a positive multiple of 3");
  const int m = static_cast<int>(edges.size());
  std::vector<int> by_x(m), by_y(m), by_z(m);
  for (int i = 0; i < m; ++i) {
    if (edges[i].x < 0 || edges[i].x >= k || edges[i].y < 0 ||
        edges[i].y >= k || edges[i].z < 0 || edges[i].z >= k)
      throw InvalidInputError("three_dm_instance: hyperedge vertex out of range");
    by_x[i] = edges[i].x;
    by_y[i] = edges[i].y;
    by_z[i] = edges[i].z;
  }
  std::vector<int> caps(k, 1);
  Matroid mx = Matroid::Partition(by_x, caps);
  Matroid my = Matroid::Partition(by_y, caps);
  Matroid mz = Matroid::Partition(by_z, caps);

  MmmInstance inst;
  for (int t = 0; t < horizon; ++t) {
    switch (t % 3) {
      case 0: inst.matroids.push_back(mx); break;
      case 1: inst.matroids.push_back(my); break;
      default: inst.matroids.push_back(mz); break;
    }
  }
  inst.horizon = horizon;
  inst.acquisition.assign(m, 1);
  inst.holding.assign(horizon, std::vector<Cost>(m, 0));
  inst.validate();
  return inst;
}

// ---------------------------------------------------------------------------
// Reproducible random instances with guaranteed per-timestep feasibility.
// ---------------------------------------------------------------------------

struct RandomSpec {
  MatroidKind family = MatroidKind::Graphic;
  int num_elements = 6;   // for graphic: number of vertices instead
  int horizon = 3;
  Cost acquisition_min = 0, acquisition_max = 10;
  Cost holding_min = 0, holding_max = 10;
  double unavailable_prob = 0.2;  // chance a holding cost becomes infinite
  std::uint64_t seed = 0;
};

inline MmmInstance random_instance(const RandomSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<Cost> acq(spec.acquisition_min,
                                          spec.acquisition_max);
  std::uniform_int_distribution<Cost> hold(spec.holding_min, spec.holding_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  MmmInstance inst;
  switch (spec.family) {
    case MatroidKind::Uniform: {
      int m = spec.num_elements;
      std::uniform_int_distribution<int> kd(1, std::max(1, m));
      inst.matroids.push_back(Matroid::Uniform(m, kd(rng)));
      break;
    }
    case MatroidKind::Partition: {
      int m = spec.num_elements;
      int parts = std::max(1, m / 2);
      std::uniform_int_distribution<int> pd(0, parts - 1);
      std::vector<int> part_of(m);
      for (int& p : part_of) p = pd(rng);
      std::vector<int> caps(parts);
      std::uniform_int_distribution<int> cd(1, 2);
      for (int& c : caps) c = cd(rng);
      inst.matroids.push_back(Matroid::Partition(part_of, caps));
      break;
    }
    case MatroidKind::Graphic: {
      // Complete graph on `num_elements` vertices.
      int n = spec.num_elements;
      std::vector<std::pair<int, int>> edges;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      inst.matroids.push_back(Matroid::Graphic(n, std::move(edges)));
      break;
    }
  }
  const Matroid& mat = inst.matroids.front();
  const int m = mat.size();
  inst.horizon = spec.horizon;
  inst.acquisition.resize(m);
  for (Cost& a : inst.acquisition) a = acq(rng);
  inst.holding.assign(spec.horizon, std::vector<Cost>(m));
  for (int t = 0; t < spec.horizon; ++t) {
    // Resample the whole row until the alive set spans.
    for (int attempt = 0;; ++attempt) {
      for (ElementId e = 0; e < m; ++e)
        inst.holding[t][e] =
            unit(rng) < spec.unavailable_prob ? kInfCost : hold(rng);
      if (mat.is_spanning(inst.alive_at(t))) break;
      if (attempt > 1000)
        throw InternalError("random_instance: cannot reach feasibility");
    }
  }
  inst.validate();
  return inst;
}

}  // namespace basewalk
