#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "basewalk/generators.hpp"
#include "basewalk/online.hpp"

using namespace basewalk;

namespace {

MmmInstance random_small(std::uint64_t seed) {
  RandomSpec spec;
  spec.family = seed % 2 ? MatroidKind::Partition : MatroidKind::Graphic;
  spec.num_elements = seed % 2 ? 6 : 4;
  spec.horizon = 2 + seed % 3;
  spec.seed = seed;
  return random_instance(spec);
}

// Stream that fails the test if the pipeline ever reads ahead of the
// timestep it is allowed to see, or reads any timestep twice.
class TripwireStream : public CostStream {
 public:
  explicit TripwireStream(const MmmInstance& inst) : inst_(inst) {}

  const Matroid& matroid() const override { return inst_.matroids.front(); }
  int horizon() const override { return inst_.horizon; }
  const std::vector<Cost>& acquisition() const override {
    return inst_.acquisition;
  }
  std::vector<Cost> next_holding() override {
    ++reads_;
    if (reads_ > inst_.horizon)
      throw ProtocolError("tripwire: read past the horizon");
    return inst_.holding[reads_ - 1];
  }

  int reads() const { return reads_; }

 private:
  const MmmInstance& inst_;
  int reads_ = 0;
};

}  // namespace

TEST_CASE("single immortal element costs its acquisition") {
  MmmInstance inst;
  inst.matroids.push_back(Matroid::Uniform(1, 1));
  inst.horizon = 3;
  inst.acquisition = {7};
  inst.holding.assign(3, {0});
  PipelineParams params;
  PipelineReport rep = online_pipeline(inst, params);
  CHECK(rep.total_cost == 7);
  CHECK(rep.acquisition_cost == 7);
  CHECK(rep.holding_cost == 0);
  for (const ElementSet& b : rep.bases.sets) CHECK(b == ElementSet{0});
}

TEST_CASE("pipeline output is always a valid base sequence") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    MmmInstance inst = random_small(seed);
    PipelineParams params;
    params.seed = seed;
    PipelineReport rep = online_pipeline(inst, params);
    ValidationReport val = validate_solution(inst, rep.bases);
    CHECK(val.ok);
    CHECK(val.total_cost == rep.total_cost);
    // Spanning supersets of the bases.
    for (int t = 0; t < inst.horizon; ++t) {
      CHECK(is_subset(rep.bases.sets[t], rep.spanning.sets[t]));
      CHECK(inst.matroids.front().is_spanning(rep.spanning.sets[t]));
    }
    // Constraint budget respected.
    CHECK(rep.max_constraints_per_step <= 2 * inst.num_elements());
    // Fractional trace rows are feasible for the covering description.
    for (int t = 0; t < inst.horizon; ++t)
      CHECK_FALSE(find_violated(inst.matroids.front(), rep.fractional_trace[t],
                                inst.alive_at(t)));
  }
}

TEST_CASE("pipeline is causal") {
  MmmInstance inst = random_small(4);
  TripwireStream stream(inst);
  PipelineParams params;
  params.seed = 4;
  PipelineReport rep = online_pipeline(stream, params);
  CHECK(stream.reads() == inst.horizon);

  // Prefix stability: truncating the future never changes the past.
  MmmInstance prefix = inst;
  prefix.horizon = 2;
  prefix.holding.resize(2);
  PipelineReport prep = online_pipeline(prefix, params);
  for (int t = 0; t < 2; ++t) {
    CHECK(prep.bases.sets[t] == rep.bases.sets[t]);
    CHECK(prep.spanning.sets[t] == rep.spanning.sets[t]);
  }

  // Reading past the horizon is a protocol error.
  InstanceStream exhausted(prefix);
  exhausted.next_holding();
  exhausted.next_holding();
  CHECK_THROWS_AS(exhausted.next_holding(), ProtocolError);
}

TEST_CASE("pipeline is reproducible per seed") {
  MmmInstance inst = random_small(9);
  PipelineParams params;
  params.seed = 123;
  PipelineReport a = online_pipeline(inst, params);
  PipelineReport b = online_pipeline(inst, params);
  CHECK(a.bases.sets == b.bases.sets);
  CHECK(a.total_cost == b.total_cost);
  params.seed = 124;
  // Different seeds may differ, but stay valid (checked above).
  CHECK_NOTHROW(online_pipeline(inst, params));
}

TEST_CASE("pipeline rejects time-varying matroids") {
  MmmInstance inst = three_dm_instance(1, {{0, 0, 0}}, 3);
  PipelineParams params;
  CHECK_THROWS_AS(online_pipeline(inst, params), InvalidInputError);
}

TEST_CASE("randomized pipeline beats the deterministic adversary bound") {
  AdversaryTranscript tr =
      adversarial_uniform_stream(5, 5, greedy_online_uniform());
  CHECK(tr.algorithm_cost == 5);
  double mean = 0.0;
  const int runs = 40;
  for (int s = 0; s < runs; ++s) {
    PipelineParams params;
    params.seed = static_cast<std::uint64_t>(s);
    mean += static_cast<double>(online_pipeline(tr.realized, params).total_cost);
  }
  mean /= runs;
  WARN_LT(mean, static_cast<double>(tr.algorithm_cost));
  CHECK(mean < 2.0 * tr.algorithm_cost);  // sanity ceiling
}

TEST_CASE("pipeline competitive ratio on set-cover streams (soft)") {
  MmmInstance inst = set_cover_instance(3, {{0, 1}, {1, 2}, {0, 2}});
  Cost opt = exact_dp(inst, 20000).optimum;
  double mean = 0.0;
  const int runs = 30;
  for (int s = 0; s < runs; ++s) {
    PipelineParams params;
    params.seed = 700 + static_cast<std::uint64_t>(s);
    mean += static_cast<double>(online_pipeline(inst, params).total_cost);
  }
  mean /= runs;
  double m = inst.num_elements();
  double r = inst.matroids.front().rank();
  WARN_LE(mean, 4.0 * std::log(m + 1.0) * std::log(r * inst.horizon + 1.0) *
                    static_cast<double>(opt));
}
