#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "basewalk/acceptance.hpp"
#include "basewalk/harness.hpp"
#include "basewalk/io.hpp"

namespace {

using basewalk::Json;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw basewalk::InvalidInputError("cannot write file: " + path);
  out << text;
}

int cmd_generate(const std::string& family, std::uint64_t seed, int size,
                 int horizon, const std::string& params_path,
                 const std::string& output) {
  Json spec;
  if (!params_path.empty()) spec = basewalk::load_json_file(params_path);
  spec["family"] = family;
  if (!spec.contains("seed")) spec["seed"] = seed;
  if (!spec.contains("size") && size > 0) spec["size"] = size;
  if (!spec.contains("T") && horizon > 0) spec["T"] = horizon;
  if (family == "gap" && !spec.contains("n")) spec["n"] = size;
  basewalk::MmmInstance inst = basewalk::generate_from_json(spec);
  write_output(output, basewalk::instance_to_json(inst).dump(2) + "\n");
  return 0;
}

int cmd_solve(const std::string& input, const std::string& alg,
              std::uint64_t seed, const std::string& output,
              const std::string& constraint_csv) {
  basewalk::MmmInstance inst =
      basewalk::instance_from_json(basewalk::load_json_file(input));
  if (const char* env = std::getenv("BASEWALK_SEED"))
    seed = std::strtoull(env, nullptr, 10);

  basewalk::AlgorithmOutcome outcome;
  std::vector<basewalk::ConstraintLogEntry> constraint_log;
  if (alg == "online" || alg == "round") {
    // Run the pipeline directly so the constraint log is available.
    basewalk::PipelineParams params;
    params.seed = seed;
    basewalk::PipelineReport rep = basewalk::online_pipeline(inst, params);
    constraint_log = rep.constraint_log;
    if (alg == "online") {
      outcome.solution = rep.bases;
      outcome.augmentations = rep.augmentation_events;
    } else {
      basewalk::RoundingParams rparams;
      rparams.threshold_scale = basewalk::default_threshold_scale(
          inst.matroids.front().rank(), inst.horizon);
      rparams.seed = seed;
      basewalk::RoundingResult rr =
          basewalk::round_fractional(inst, rep.fractional_trace, rparams);
      outcome.solution = rr.solution;
      outcome.augmentations = rr.augmentation_events;
    }
    outcome.max_constraints_per_step = rep.max_constraints_per_step;
  } else {
    outcome = basewalk::run_algorithm(alg, inst, seed);
  }

  basewalk::ValidationReport val =
      basewalk::validate_solution(inst, outcome.solution);
  if (!val.ok)
    throw basewalk::InternalError("solver emitted an invalid solution: " +
                                  val.failures.front());
  Json out = basewalk::solution_to_json(outcome.solution);
  out["total_cost"] = basewalk::cost_to_json(val.total_cost);
  out["holding_cost"] = basewalk::cost_to_json(val.holding_cost);
  out["acquisition_cost"] = basewalk::cost_to_json(val.acquisition_cost);
  write_output(output, out.dump(2) + "\n");
  std::cerr << "algorithm=" << alg << " total=" << val.total_cost
            << " holding=" << val.holding_cost
            << " acquisition=" << val.acquisition_cost << "\n";

  if (!constraint_csv.empty()) {
    std::ofstream csv(constraint_csv);
    if (!csv)
      throw basewalk::InvalidInputError("cannot write file: " + constraint_csv);
    csv << "timestep,set_size,rhs,x_before,x_after\n";
    for (const basewalk::ConstraintLogEntry& e : constraint_log)
      csv << e.timestep << ',' << e.set_size << ',' << e.rhs << ','
          << e.x_before << ',' << e.x_after << '\n';
  }
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& csv_path) {
  Json config = basewalk::load_json_file(config_path);
  basewalk::ExperimentReport report = basewalk::run_experiment(config);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv)
      throw basewalk::InvalidInputError("cannot write file: " + csv_path);
    csv << report.to_csv();
  } else {
    std::cout << report.to_csv();
  }
  std::cerr << report.summary();
  return 0;
}

int cmd_accept() {
  std::vector<basewalk::CriterionResult> results = basewalk::run_acceptance();
  bool ok = basewalk::report_acceptance(results, std::cout);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multistage matroid maintenance toolkit"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "generate an instance file");
  std::string family = "graphic", gen_params, gen_output;
  std::uint64_t gen_seed = 0;
  int gen_size = 6, gen_horizon = 4;
  gen->add_option("--family", family,
                  "uniform|partition|graphic|set_cover|gap|three_dm")
      ->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--size", gen_size, "ground-set size (gap: n)");
  gen->add_option("--horizon", gen_horizon, "number of timesteps");
  gen->add_option("--params", gen_params,
                  "JSON file with extra family parameters");
  gen->add_option("--output,-o", gen_output, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "solve an instance file");
  std::string solve_input, solve_alg = "dp", solve_output, solve_csv;
  std::uint64_t solve_seed = 0;
  solve->add_option("--input,-i", solve_input, "instance JSON file")
      ->required();
  solve->add_option("--alg", solve_alg, "greedy|round|online|dp|flow");
  solve->add_option("--seed", solve_seed, "randomness seed");
  solve->add_option("--output,-o", solve_output,
                    "solution file (default stdout)");
  solve->add_option("--log-constraints", solve_csv,
                    "dump the covering constraint log to this CSV file");

  auto* bench = app.add_subcommand("bench", "run a benchmark config");
  std::string bench_config, bench_csv;
  bench->add_option("--config,-c", bench_config, "bench config JSON file")
      ->required();
  bench->add_option("--csv", bench_csv, "CSV output file (default stdout)");

  app.add_subcommand("accept", "run the acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("generate"))
      return cmd_generate(family, gen_seed, gen_size, gen_horizon, gen_params,
                          gen_output);
    if (app.got_subcommand("solve"))
      return cmd_solve(solve_input, solve_alg, solve_seed, solve_output,
                       solve_csv);
    if (app.got_subcommand("bench")) return cmd_bench(bench_config, bench_csv);
    if (app.got_subcommand("accept")) return cmd_accept();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
