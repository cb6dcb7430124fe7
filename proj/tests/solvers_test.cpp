#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "basewalk/generators.hpp"
#include "basewalk/rounding.hpp"
#include "basewalk/solvers.hpp"

using namespace basewalk;

namespace {

Matroid triangle() {
  return Matroid::Graphic(3, {{0, 1}, {1, 2}, {0, 2}});
}

MmmInstance random_small(std::uint64_t seed) {
  RandomSpec spec;
  spec.family = seed % 2 ? MatroidKind::Partition : MatroidKind::Graphic;
  spec.num_elements = seed % 2 ? 6 : 4;
  spec.horizon = 2 + seed % 3;
  spec.seed = seed;
  return random_instance(spec);
}

}  // namespace

TEST_CASE("greedy on a single timestep picks a base") {
  IntervalInstance iv;
  iv.matroid = triangle();
  iv.horizon = 1;
  iv.elements = {{0, 1, 1, 1}, {1, 1, 1, 1}, {2, 1, 1, 1}};
  GreedyResult g = greedy_msm(iv);
  CHECK(g.chosen.size() == 2);
  CHECK(g.interval_cost == 2);
}

TEST_CASE("greedy prefers long-lived copies") {
  IntervalInstance iv;
  iv.matroid = Matroid::Uniform(2, 1);
  iv.horizon = 2;
  iv.elements = {{0, 1, 2, 2}, {1, 1, 1, 2}, {1, 2, 2, 2}};
  GreedyResult g = greedy_msm(iv);
  CHECK(g.chosen == std::vector<int>{0});
  CHECK(g.interval_cost == 2);
}

TEST_CASE("greedy solves the easy set cover") {
  MmmInstance inst = set_cover_instance(2, {{0, 1}, {0}});
  IntervalInstance iv = to_interval_exact(inst);
  GreedyResult g = greedy_msm(iv);
  CHECK(g.interval_cost == 1);
  CHECK(exact_dp(inst, 5000).optimum == 1);
  SolutionSequence sol = copies_to_parents(iv, g.copy_sets);
  CHECK(msm_cost(inst, sol) == 1);
}

TEST_CASE("spanning_to_bases") {
  MmmInstance inst;
  inst.matroids.push_back(triangle());
  inst.horizon = 2;
  inst.acquisition = {4, 5, 6};
  inst.holding = {{0, 0, 0}, {0, 0, 0}};

  // Already bases: unchanged.
  SolutionSequence bases;
  bases.kind = SolutionKind::Base;
  bases.sets = {{0, 1}, {0, 1}};
  CHECK(spanning_to_bases(inst, bases).sets == bases.sets);

  // Constant spanning set: acquisition paid once, base constant.
  SolutionSequence span;
  span.sets = {{0, 1, 2}, {0, 1, 2}};
  SolutionSequence out = spanning_to_bases(inst, span);
  CHECK(out.sets[0] == out.sets[1]);
  CHECK(out.acquisition_cost == 9);
  CHECK(mmm_cost(inst, out) <= msm_cost(inst, span));
}

TEST_CASE("conversion inequality on random instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MmmInstance inst = random_small(seed);
    IntervalInstance iv = to_interval_exact(inst);
    GreedyResult g = greedy_msm(iv);
    SolutionSequence span = copies_to_parents(iv, g.copy_sets);
    SolutionSequence bases = spanning_to_bases(inst, span);
    CHECK(mmm_cost(inst, bases) <= msm_cost(inst, span));
  }
}

TEST_CASE("exact dp basics") {
  // T=1: min over bases.
  MmmInstance inst;
  inst.matroids.push_back(triangle());
  inst.horizon = 1;
  inst.acquisition = {3, 1, 2};
  inst.holding = {{0, 0, 0}};
  ExactResult res = exact_dp(inst, 100);
  CHECK(res.optimum == 3);
  CHECK(res.solution.sets[0] == ElementSet{1, 2});

  // Zero acquisition: layers decouple into per-timestep minima.
  inst.horizon = 2;
  inst.acquisition = {0, 0, 0};
  inst.holding = {{5, 1, 1}, {1, 5, 1}};
  CHECK(exact_dp(inst, 100).optimum == 4);

  CHECK_THROWS_AS(exact_dp(inst, 1), ResourceLimitError);
}

TEST_CASE("base and spanning optima coincide (fixed matroid)") {
  for (std::uint64_t seed = 50; seed < 80; ++seed) {
    MmmInstance inst = random_small(seed);
    CHECK(exact_dp(inst, 5000).optimum == exact_dp_spanning(inst).optimum);
  }
}

TEST_CASE("partition flow basics") {
  // r parts, T=1: cheapest element per part.
  MmmInstance inst;
  inst.matroids.push_back(Matroid::Partition({0, 0, 1, 1}, {1, 1}));
  inst.horizon = 1;
  inst.acquisition = {4, 2, 1, 5};
  inst.holding = {{0, 0, 0, 0}};
  CHECK(partition_flow_exact(inst).optimum == 3);

  // 1-uniform with a forced switch.
  MmmInstance sw;
  sw.matroids.push_back(Matroid::Partition({0, 0}, {1}));
  sw.horizon = 2;
  sw.acquisition = {3, 3};
  sw.holding = {{0, 9}, {kInfCost, 1}};
  ExactResult res = partition_flow_exact(sw);
  CHECK(res.optimum == 7);  // a(0) + a(1) + c_2(1)
  CHECK(res.optimum == exact_dp(sw, 100).optimum);

  MmmInstance graphic;
  graphic.matroids.push_back(triangle());
  graphic.horizon = 1;
  graphic.acquisition = {1, 1, 1};
  graphic.holding = {{0, 0, 0}};
  CHECK_THROWS_AS(partition_flow_exact(graphic), InvalidInputError);
}

TEST_CASE("flow equals dp on random partition instances") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomSpec spec;
    spec.family = MatroidKind::Partition;
    spec.num_elements = 4 + seed % 5;
    spec.horizon = 2 + seed % 4;
    spec.seed = 900 + seed;
    MmmInstance inst = random_instance(spec);
    CHECK(partition_flow_exact(inst).optimum ==
          exact_dp(inst, 5000).optimum);
  }
}

TEST_CASE("greedy ratio bound") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    MmmInstance inst = random_small(seed);
    IntervalInstance iv = to_interval_exact(inst);
    int max_len = 1;
    for (const IntervalElement& el : iv.elements)
      max_len = std::max(max_len, el.end - el.start + 1);
    double h = 0.0;
    for (int i = 1; i <= max_len; ++i) h += 1.0 / i;
    Cost opt = exact_dp(inst, 5000).optimum;
    Cost greedy = greedy_msm(iv).interval_cost;
    CHECK(static_cast<double>(greedy) <=
          (1.0 + h) * static_cast<double>(opt) + 1e-9);
  }
}

TEST_CASE("sample_rank_check") {
  Matroid u42 = Matroid::Uniform(4, 2);
  // Integral base: rank exactly r in every sample.
  RankSampleStats stats = sample_rank_check(u42, {1, 1, 0, 0}, 500, 1);
  CHECK(stats.mean == doctest::Approx(2.0));
  CHECK(stats.stderr_ == doctest::Approx(0.0));

  // Half mass everywhere: exact expectation min(Bin(4,1/2),2) = 26/16.
  stats = sample_rank_check(u42, {0.5, 0.5, 0.5, 0.5}, 20000, 2);
  CHECK(stats.mean ==
        doctest::Approx(1.625).epsilon(0.02));  // binomial oracle value
  CHECK(stats.mean >= 2.0 * (1.0 - std::exp(-1.0)) - 3.0 * stats.stderr_);

  // Not a fractional base: mass off, or outside the polytope.
  CHECK_THROWS_AS(sample_rank_check(u42, {1, 1, 1, 0}, 10, 3),
                  InvalidInputError);
  CHECK_THROWS_AS(sample_rank_check(u42, {2.0, 0, 0, 0}, 10, 3),
                  InvalidInputError);
}
