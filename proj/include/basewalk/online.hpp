#pragma once

#include <memory>
#include <random>

#include "basewalk/core.hpp"
#include "basewalk/fractional.hpp"
#include "basewalk/instance.hpp"
#include "basewalk/rounding.hpp"
#include "basewalk/solvers.hpp"

namespace basewalk {

// Causal cost stream: acquisition costs are known up-front, holding costs
// are revealed one timestep at a time and can never be read ahead.
class CostStream {
 public:
  virtual ~CostStream() = default;
  virtual const Matroid& matroid() const = 0;
  virtual int horizon() const = 0;
  virtual const std::vector<Cost>& acquisition() const = 0;
  virtual std::vector<Cost> next_holding() = 0;
};

class InstanceStream : public CostStream {
 public:
  explicit InstanceStream(const MmmInstance& inst) : inst_(inst) {
    if (inst.time_varying())
      throw InvalidInputError("online pipeline requires a fixed matroid");
  }

  const Matroid& matroid() const override { return inst_.matroids.front(); }
  int horizon() const override { return inst_.horizon; }
  const std::vector<Cost>& acquisition() const override {
    return inst_.acquisition;
  }
  std::vector<Cost> next_holding() override {
    if (next_ >= inst_.horizon)
      throw ProtocolError("stream read past the horizon");
    return inst_.holding[next_++];
  }

 private:
  const MmmInstance& inst_;
  int next_ = 0;
};

struct PipelineParams {
  std::uint64_t seed = 0;
  double threshold_scale = 0.0;  // 0 means 32 log(rT)
};

struct PipelineReport {
  SolutionSequence bases;          // final MMM solution
  SolutionSequence spanning;       // rounded spanning sets before conversion
  Cost total_cost = 0;
  Cost holding_cost = 0;
  Cost acquisition_cost = 0;
  Cost fractional_spend = 0;       // total fractional acquisition spend
  std::vector<int> constraints_per_step;
  std::vector<ConstraintLogEntry> constraint_log;
  std::vector<Cost> spend_per_step;
  // Clamped parent-space fractional vector after each timestep (zero on
  // unavailable elements); feeds the offline rounding variants.
  std::vector<std::vector<double>> fractional_trace;
  int augmentation_events = 0;
  int max_constraints_per_step = 0;
};

// Online MSM/MMM pipeline: interval reduction -> adaptive fractional
// covering -> monotone threshold rounding -> base extraction, all causal.
inline PipelineReport online_pipeline(CostStream& stream,
                                      const PipelineParams& params) {
  const Matroid& mat = stream.matroid();
  const int m = mat.size();
  const int T = stream.horizon();
  const std::vector<Cost>& acq = stream.acquisition();
  double scale = params.threshold_scale > 0.0
                     ? params.threshold_scale
                     : default_threshold_scale(mat.rank(), T);

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> tau_dist(0.0, 1.0 / scale);

  OnlineIntervalReducer reducer(mat, acq);
  std::vector<double> copy_x;    // monotone per interval copy
  std::vector<double> copy_tau;  // drawn lazily at copy birth

  PipelineReport rep;
  rep.bases.kind = SolutionKind::Base;
  rep.spanning.kind = SolutionKind::Spanning;
  ElementSet prev_base;

  for (int t = 1; t <= T; ++t) {
    std::vector<Cost> holding = stream.next_holding();
    std::vector<int> alive_copy = reducer.observe(holding);
    const auto& copies = reducer.instance().elements;
    while (copy_x.size() < copies.size()) {
      copy_x.push_back(0.0);
      copy_tau.push_back(tau_dist(rng));
    }

    ElementSet alive;
    std::vector<Cost> copy_cost(m, kInfCost);
    for (ElementId e = 0; e < m; ++e) {
      if (is_finite(copies[alive_copy[e]].cost)) {
        alive.push_back(e);
        copy_cost[e] = copies[alive_copy[e]].cost;
      }
    }
    if (!mat.is_spanning(alive))
      throw InfeasibleError("online_pipeline: alive set does not span at t=" +
                            std::to_string(t));

    // Parent-space view of the copy variables for this timestep.
    FractionalState step(static_cast<std::size_t>(m));
    for (ElementId e : alive) step.x[e] = copy_x[alive_copy[e]];
    fractional_step(step, mat, alive, copy_cost, t);
    for (ElementId e : alive) copy_x[alive_copy[e]] = step.x[e];
    rep.constraints_per_step.push_back(step.constraints_this_step);
    rep.max_constraints_per_step =
        std::max(rep.max_constraints_per_step, step.constraints_this_step);
    for (const ConstraintLogEntry& entry : step.log)
      rep.constraint_log.push_back(entry);
    rep.spend_per_step.push_back(step.acquisition_spend.back());
    rep.fractional_spend =
        add_cost(rep.fractional_spend, step.acquisition_spend.back());
    std::vector<double> snapshot(m, 0.0);
    for (ElementId e : alive)
      snapshot[e] = std::min(2.0 * copy_x[alive_copy[e]], 1.0);
    rep.fractional_trace.push_back(std::move(snapshot));

    // Monotone rounding: select an alive copy once its clamped value passes
    // the copy's fixed threshold.
    ElementSet st;
    for (ElementId e : alive) {
      double clamped = std::min(2.0 * copy_x[alive_copy[e]], 1.0);
      if (clamped >= copy_tau[alive_copy[e]]) st.push_back(e);
    }
    if (!mat.is_spanning(st)) {
      ++rep.augmentation_events;
      std::vector<Cost> weight(m, kInfCost);
      for (ElementId e : alive) weight[e] = add_cost(acq[e], holding[e]);
      st = set_union(st, mat.min_weight_base(weight, alive));
    }
    rep.spanning.sets.push_back(st);

    ElementSet base = mat.extend_to_base(set_intersection(prev_base, st), st);
    for (ElementId e : base) {
      rep.holding_cost = add_cost(rep.holding_cost, holding[e]);
    }
    for (ElementId e : set_difference(base, prev_base))
      rep.acquisition_cost = add_cost(rep.acquisition_cost, acq[e]);
    rep.bases.sets.push_back(base);
    prev_base = std::move(base);
  }

  rep.total_cost = add_cost(rep.holding_cost, rep.acquisition_cost);
  rep.bases.holding_cost = rep.holding_cost;
  rep.bases.acquisition_cost = rep.acquisition_cost;
  return rep;
}

inline PipelineReport online_pipeline(const MmmInstance& inst,
                                      const PipelineParams& params) {
  InstanceStream stream(inst);
  return online_pipeline(stream, params);
}

}  // namespace basewalk
