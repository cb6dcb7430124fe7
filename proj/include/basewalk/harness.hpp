#pragma once

#include <chrono>
#include <iomanip>
#include <sstream>

#include "basewalk/core.hpp"
#include "basewalk/generators.hpp"
#include "basewalk/instance.hpp"
#include "basewalk/io.hpp"
#include "basewalk/online.hpp"
#include "basewalk/rounding.hpp"
#include "basewalk/solvers.hpp"

namespace basewalk {

struct TrialRecord {
  std::string instance_id;
  std::string algorithm;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";  // or "error: ..."
  Cost total_cost = kInfCost;
  Cost holding_cost = 0;
  Cost acquisition_cost = 0;
  int max_constraints_per_step = 0;
  int augmentations = 0;
  double wall_ms = 0.0;  // summary only, kept out of the CSV for determinism
  double ratio = 0.0;    // vs baseline, 0 when unavailable
};

struct ExperimentReport {
  std::vector<TrialRecord> records;

  // Fixed column set; wall time deliberately excluded so reruns of the same
  // config produce byte-identical CSV.
  std::string to_csv() const {
    std::ostringstream out;
    out << "instance,algorithm,trial,seed,status,total_cost,holding_cost,"
           "acquisition_cost,max_constraints_per_step,augmentations,"
           "ratio_vs_baseline\n";
    for (const TrialRecord& r : records) {
      out << r.instance_id << ',' << r.algorithm << ',' << r.trial << ','
          << r.seed << ',' << r.status << ',';
      if (is_finite(r.total_cost))
        out << r.total_cost;
      else
        out << "inf";
      out << ',' << r.holding_cost << ',' << r.acquisition_cost << ','
          << r.max_constraints_per_step << ',' << r.augmentations << ',';
      out << std::fixed << std::setprecision(4) << r.ratio << '\n';
      out.unsetf(std::ios::fixed);
    }
    return out.str();
  }

  std::string summary() const {
    std::ostringstream out;
    out << std::left << std::setw(16) << "instance" << std::setw(10)
        << "algorithm" << std::right << std::setw(8) << "trials"
        << std::setw(14) << "mean_cost" << std::setw(12) << "mean_ratio"
        << std::setw(12) << "wall_ms" << '\n';
    // Aggregate by (instance, algorithm), preserving record order.
    std::vector<std::pair<std::string, std::string>> keys;
    for (const TrialRecord& r : records) {
      std::pair<std::string, std::string> key{r.instance_id, r.algorithm};
      if (std::find(keys.begin(), keys.end(), key) == keys.end())
        keys.push_back(key);
    }
    for (const auto& [inst, alg] : keys) {
      int n = 0;
      double cost = 0.0, ratio = 0.0, wall = 0.0;
      int with_ratio = 0;
      for (const TrialRecord& r : records) {
        if (r.instance_id != inst || r.algorithm != alg || r.status != "ok")
          continue;
        ++n;
        cost += static_cast<double>(r.total_cost);
        wall += r.wall_ms;
        if (r.ratio > 0.0) {
          ratio += r.ratio;
          ++with_ratio;
        }
      }
      out << std::left << std::setw(16) << inst << std::setw(10) << alg
          << std::right << std::setw(8) << n << std::setw(14) << std::fixed
          << std::setprecision(2) << (n ? cost / n : 0.0) << std::setw(12)
          << std::setprecision(4) << (with_ratio ? ratio / with_ratio : 0.0)
          << std::setw(12) << std::setprecision(2) << wall << '\n';
      out.unsetf(std::ios::fixed);
    }
    return out.str();
  }
};

struct AlgorithmOutcome {
  SolutionSequence solution;
  int max_constraints_per_step = 0;
  int augmentations = 0;
};

// Runs one named algorithm on one instance. Throws on unsupported
// combinations; the experiment loop records the error per row.
inline AlgorithmOutcome run_algorithm(const std::string& name,
                                      const MmmInstance& inst,
                                      std::uint64_t seed) {
  AlgorithmOutcome out;
  if (name == "dp") {
    out.solution = exact_dp(inst, 200000).solution;
  } else if (name == "greedy") {
    GreedyResult g = greedy_msm(to_interval_exact(inst));
    out.solution = copies_to_parents(to_interval_exact(inst), g.copy_sets);
    detail::sequence_cost(inst, out.solution, &out.solution.holding_cost,
                          &out.solution.acquisition_cost);
  } else if (name == "online") {
    PipelineParams params;
    params.seed = seed;
    PipelineReport rep = online_pipeline(inst, params);
    out.solution = rep.bases;
    out.max_constraints_per_step = rep.max_constraints_per_step;
    out.augmentations = rep.augmentation_events;
  } else if (name == "round") {
    // Fractional trace from the covering engine, rounded with fixed
    // thresholds at L = 32 log(rT).
    PipelineParams pparams;
    pparams.seed = seed;
    PipelineReport rep = online_pipeline(inst, pparams);
    RoundingParams rparams;
    rparams.threshold_scale =
        default_threshold_scale(inst.matroids.front().rank(), inst.horizon);
    rparams.seed = seed;
    RoundingResult rr = round_fractional(inst, rep.fractional_trace, rparams);
    out.solution = rr.solution;
    out.augmentations = rr.augmentation_events;
    out.max_constraints_per_step = rep.max_constraints_per_step;
  } else if (name == "flow") {
    out.solution = partition_flow_exact(inst).solution;
  } else {
    throw InvalidInputError("unknown algorithm: " + name);
  }
  return out;
}

inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> algs{"dp", "greedy", "online", "round",
                                             "flow"};
  return algs;
}

// Bench config:
//   {"master_seed": u64?, "trials": int, "baseline": "dp"?,
//    "algorithms": ["dp","greedy",...],
//    "instances": [{"id": "...", "generator": {...}} | {"id", "file": "..."}]}
// BASEWALK_SEED overrides the master seed.
inline ExperimentReport run_experiment(const Json& config) {
  std::uint64_t master_seed = config.value("master_seed", std::uint64_t{0});
  if (const char* env = std::getenv("BASEWALK_SEED"))
    master_seed = std::strtoull(env, nullptr, 10);
  int trials = config.value("trials", 1);
  std::string baseline = config.value("baseline", std::string{});
  std::vector<std::string> algorithms =
      config.at("algorithms").get<std::vector<std::string>>();
  for (const std::string& alg : algorithms)
    if (std::find(known_algorithms().begin(), known_algorithms().end(), alg) ==
        known_algorithms().end())
      throw InvalidInputError("config references unknown algorithm: " + alg);
  if (!baseline.empty() &&
      std::find(algorithms.begin(), algorithms.end(), baseline) ==
          algorithms.end())
    throw InvalidInputError("baseline must be one of the run algorithms");

  std::vector<std::pair<std::string, MmmInstance>> instances;
  for (const Json& ij : config.at("instances")) {
    std::string id = ij.at("id").get<std::string>();
    if (ij.contains("file"))
      instances.emplace_back(id, instance_from_json(load_json_file(
                                     ij.at("file").get<std::string>())));
    else
      instances.emplace_back(id, generate_from_json(ij.at("generator")));
  }

  ExperimentReport report;
  for (const auto& [id, inst] : instances) {
    std::vector<Cost> baseline_cost(trials, kInfCost);
    for (const std::string& alg : algorithms) {
      for (int trial = 0; trial < trials; ++trial) {
        TrialRecord rec;
        rec.instance_id = id;
        rec.algorithm = alg;
        rec.trial = trial;
        rec.seed = master_seed + static_cast<std::uint64_t>(trial);
        auto start = std::chrono::steady_clock::now();
        try {
          AlgorithmOutcome outcome = run_algorithm(alg, inst, rec.seed);
          ValidationReport val = validate_solution(inst, outcome.solution);
          if (!val.ok)
            throw InternalError("solver emitted an invalid solution: " +
                                val.failures.front());
          rec.total_cost = val.total_cost;
          rec.holding_cost = val.holding_cost;
          rec.acquisition_cost = val.acquisition_cost;
          rec.max_constraints_per_step = outcome.max_constraints_per_step;
          rec.augmentations = outcome.augmentations;
          if (alg == baseline) baseline_cost[trial] = rec.total_cost;
        } catch (const std::exception& ex) {
          rec.status = std::string("error: ") + ex.what();
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        report.records.push_back(std::move(rec));
      }
    }
    // Ratios vs the baseline, only where both runs solved the instance.
    if (!baseline.empty()) {
      for (TrialRecord& rec : report.records) {
        if (rec.instance_id != id || rec.status != "ok") continue;
        Cost base = baseline_cost[rec.trial];
        if (is_finite(base) && base > 0 && is_finite(rec.total_cost))
          rec.ratio = static_cast<double>(rec.total_cost) /
                      static_cast<double>(base);
      }
    }
  }
  return report;
}

}  // namespace basewalk
