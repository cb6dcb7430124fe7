#pragma once

#include <cmath>
#include <random>

#include "basewalk/core.hpp"
#include "basewalk/fractional.hpp"
#include "basewalk/instance.hpp"
#include "basewalk/matroid.hpp"

namespace basewalk {

enum class RoundingPolicy { FixedThresholds, RerandomizeOnFailure };

struct RoundingParams {
  double threshold_scale = 1.0;  // L; thresholds are uniform in [0, 1/L]
  std::uint64_t seed = 0;
  RoundingPolicy policy = RoundingPolicy::FixedThresholds;
  int max_redraws = 64;
};

// L = 32 log(rT), the horizon-dependent threshold scale.
inline double default_threshold_scale(int rank, int horizon) {
  double rt = std::max(2.0, static_cast<double>(rank) *
                                static_cast<double>(horizon));
  return 32.0 * std::log(rt);
}

struct RoundingResult {
  SolutionSequence solution;
  int augmentation_events = 0;   // timesteps patched via min-weight base
  int rerandomizations = 0;      // full threshold redraws
};

// Threshold rounding of per-timestep fractional vectors z_t over the
// original elements: pick e at time t when z_t(e) >= tau_e. Non-spanning
// timesteps are patched with the min-weight base under (a(e) + c_t(e)) over
// the alive elements, or the thresholds are fully redrawn, per policy.
inline RoundingResult round_fractional(const MmmInstance& inst,
                                       const std::vector<std::vector<double>>& z,
                                       const RoundingParams& params) {
  if (static_cast<int>(z.size()) != inst.horizon)
    throw InvalidInputError("round_fractional: z must have T rows");
  std::mt19937_64 rng(params.seed);
  const int m = inst.num_elements();
  std::uniform_real_distribution<double> dist(0.0,
                                              1.0 / params.threshold_scale);
  std::vector<double> tau(m);
  for (double& t : tau) t = dist(rng);

  RoundingResult res;
  res.solution.kind = SolutionKind::Spanning;
  for (int t = 0; t < inst.horizon; ++t) {
    const Matroid& mat = inst.matroid_at(t);
    ElementSet alive = inst.alive_at(t);
    auto select = [&] {
      ElementSet s;
      for (ElementId e : alive)
        if (z[t][e] >= tau[e]) s.push_back(e);
      return s;
    };
    ElementSet st = select();
    if (!mat.is_spanning(st) &&
        params.policy == RoundingPolicy::RerandomizeOnFailure) {
      for (int redraw = 0; redraw < params.max_redraws; ++redraw) {
        ++res.rerandomizations;
        for (double& v : tau) v = dist(rng);
        st = select();
        if (mat.is_spanning(st)) break;
      }
    }
    if (!mat.is_spanning(st)) {
      ++res.augmentation_events;
      std::vector<Cost> weight(m, kInfCost);
      for (ElementId e : alive)
        weight[e] = add_cost(inst.acquisition[e], inst.holding[t][e]);
      st = set_union(st, mat.min_weight_base(weight, alive));
    }
    res.solution.sets.push_back(std::move(st));
  }
  detail::sequence_cost(inst, res.solution, &res.solution.holding_cost,
                        &res.solution.acquisition_cost);
  return res;
}

// ---------------------------------------------------------------------------
// Epoch/phase rounding: threshold scale independent of T, rerandomizing all
// thresholds on failure and charging the redraw to the epoch budget.
// ---------------------------------------------------------------------------

struct EpochPhaseState {
  std::vector<int> epoch_starts;  // 0-based timestep indices
  std::vector<int> phase_starts;
  double aspect_ratio = 1.0;      // R = 8 r a_max / a_min
  double threshold_scale = 1.0;   // L' = 64 log R
};

// Epoch boundaries accumulate fractional acquisition spend into
// [r a_max, 2 r a_max] windows; phases cap spend at a_min / 4.
inline EpochPhaseState plan_epochs(const MmmInstance& inst,
                                   const std::vector<Cost>& spend) {
  if (static_cast<int>(spend.size()) != inst.horizon)
    throw InvalidInputError("plan_epochs: spend trace must have T entries");
  Cost a_max = 0, a_min = kInfCost;
  for (Cost a : inst.acquisition) {
    if (a > 0) a_min = std::min(a_min, a);
    a_max = std::max(a_max, a);
  }
  if (!is_finite(a_min)) a_min = 1;  // all-zero acquisition costs
  if (a_max == 0) a_max = 1;
  int r = inst.matroids.front().rank();
  EpochPhaseState state;
  state.aspect_ratio = std::max(
      8.0, 8.0 * r * static_cast<double>(a_max) / static_cast<double>(a_min));
  state.threshold_scale = 64.0 * std::log(state.aspect_ratio);

  double epoch_budget = static_cast<double>(r) * static_cast<double>(a_max);
  double phase_budget = static_cast<double>(a_min) / 4.0;
  double epoch_spend = 0.0, phase_spend = 0.0;
  state.epoch_starts.push_back(0);
  state.phase_starts.push_back(0);
  for (int t = 0; t < inst.horizon; ++t) {
    double s = static_cast<double>(spend[t]);
    if (t > 0 && epoch_spend + s > epoch_budget) {
      state.epoch_starts.push_back(t);
      state.phase_starts.push_back(t);
      epoch_spend = 0.0;
      phase_spend = 0.0;
    } else if (t > 0 && phase_spend + s > phase_budget) {
      state.phase_starts.push_back(t);
      phase_spend = 0.0;
    }
    epoch_spend += s;
    phase_spend += s;
  }
  return state;
}

struct EpochPhaseResult {
  RoundingResult rounding;
  EpochPhaseState state;
};

inline EpochPhaseResult epoch_phase_round(const MmmInstance& inst,
                                          const std::vector<std::vector<double>>& z,
                                          const std::vector<Cost>& spend,
                                          std::uint64_t seed) {
  EpochPhaseResult res;
  res.state = plan_epochs(inst, spend);
  RoundingParams params;
  params.threshold_scale = res.state.threshold_scale;
  params.seed = seed;
  params.policy = RoundingPolicy::RerandomizeOnFailure;
  res.rounding = round_fractional(inst, z, params);
  return res;
}

// ---------------------------------------------------------------------------
// Monte Carlo check of the fractional-base sampling bound.
// ---------------------------------------------------------------------------

struct RankSampleStats {
  double mean = 0.0;
  double stderr_ = 0.0;
  int trials = 0;
};

// Samples R(z) by independent inclusion with probability z_e and reports the
// empirical mean rank with its standard error. z must be a fractional base.
inline RankSampleStats sample_rank_check(const Matroid& mat,
                                         const std::vector<double>& z,
                                         int trials, std::uint64_t seed) {
  if (static_cast<int>(z.size()) != mat.size())
    throw InvalidInputError("sample_rank_check: z size mismatch");
  double mass = 0.0;
  for (double v : z) {
    if (v < -kEpsNum || v > 1.0 + kEpsNum)
      throw InvalidInputError("sample_rank_check: z outside [0,1]");
    mass += v;
  }
  if (std::abs(mass - mat.rank()) > 1e-6)
    throw InvalidInputError("sample_rank_check: z(E) != rank, not a base");
  if (find_violated(mat, z, mat.ground_set()))
    throw InvalidInputError("sample_rank_check: z outside the base polytope");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < trials; ++i) {
    ElementSet s;
    for (ElementId e = 0; e < mat.size(); ++e)
      if (unit(rng) < z[e]) s.push_back(e);
    double r = mat.rank_of(s);
    sum += r;
    sum_sq += r * r;
  }
  RankSampleStats stats;
  stats.trials = trials;
  stats.mean = sum / trials;
  double var = std::max(0.0, sum_sq / trials - stats.mean * stats.mean);
  stats.stderr_ = std::sqrt(var / trials);
  return stats;
}

}  // namespace basewalk
