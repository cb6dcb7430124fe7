#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "basewalk/generators.hpp"
#include "basewalk/instance.hpp"
#include "basewalk/solvers.hpp"

using namespace basewalk;

namespace {

MmmInstance one_of_three() {
  MmmInstance inst;
  inst.matroids.push_back(Matroid::Uniform(3, 1));
  inst.horizon = 2;
  inst.acquisition = {1, 1, 1};
  inst.holding = {{0, 9, 9}, {9, 0, 9}};
  inst.validate();
  return inst;
}

MmmInstance single_element(Cost a, std::vector<Cost> c) {
  MmmInstance inst;
  inst.matroids.push_back(Matroid::Uniform(1, 1));
  inst.horizon = static_cast<int>(c.size());
  inst.acquisition = {a};
  for (Cost v : c) inst.holding.push_back({v});
  inst.validate();
  return inst;
}

}  // namespace

TEST_CASE("instance validation") {
  MmmInstance inst = one_of_three();
  CHECK(inst.alive_at(0) == ElementSet{0, 1, 2});
  inst.holding[0] = {kInfCost, kInfCost, kInfCost};
  CHECK_THROWS_AS(inst.validate(), InfeasibleError);
  inst = one_of_three();
  inst.acquisition = {1, 1};
  CHECK_THROWS_AS(inst.validate(), InvalidInputError);
}

TEST_CASE("msm and mmm cost") {
  MmmInstance inst = one_of_three();
  SolutionSequence sol;
  sol.kind = SolutionKind::Spanning;
  sol.sets = {{0}, {1}};
  CHECK(msm_cost(inst, sol) == 2);
  CHECK(exact_dp(inst, 100).optimum == 2);  // this really is OPT
  sol.kind = SolutionKind::Base;
  CHECK(mmm_cost(inst, sol) == 2);

  // Identical sets pay acquisition once.
  SolutionSequence constant;
  constant.sets = {{0}, {0}};
  CHECK(msm_cost(inst, constant) == 1 + 9);

  // T=1, zero holding, unit acquisition: cost r.
  MmmInstance flat;
  flat.matroids.push_back(Matroid::Uniform(4, 2));
  flat.horizon = 1;
  flat.acquisition = {1, 1, 1, 1};
  flat.holding = {{0, 0, 0, 0}};
  SolutionSequence base;
  base.kind = SolutionKind::Base;
  base.sets = {{0, 1}};
  CHECK(mmm_cost(flat, base) == 2);

  SolutionSequence bad;
  bad.sets = {{0}, {}};
  CHECK_THROWS_AS(msm_cost(inst, bad), InfeasibleError);
  bad.kind = SolutionKind::Base;
  bad.sets = {{0}, {0, 1}};
  CHECK_THROWS_AS(mmm_cost(inst, bad), InvalidInputError);
}

TEST_CASE("validate_solution report") {
  MmmInstance inst = one_of_three();
  SolutionSequence sol;
  sol.kind = SolutionKind::Base;
  sol.sets = {{0}, {1}};
  CHECK(validate_solution(inst, sol).ok);
  CHECK(validate_solution(inst, sol).total_cost == 2);

  sol.sets = {{}, {1}};
  ValidationReport rep = validate_solution(inst, sol);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failures.front().find("timestep 1") != std::string::npos);

  inst.holding[1][0] = kInfCost;
  sol.sets = {{0}, {0}};
  rep = validate_solution(inst, sol);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failures.front().find("unavailable") != std::string::npos);
}

TEST_CASE("exact interval reduction") {
  // T=1: one copy per element, cost a + c_1.
  MmmInstance inst = one_of_three();
  inst.horizon = 1;
  inst.holding = {{0, 9, 9}};
  IntervalInstance iv = to_interval_exact(inst);
  CHECK(iv.elements.size() == 3);
  CHECK(iv.elements[0].cost == 1);
  CHECK(iv.elements[1].cost == 10);

  // a=2, c=(1,3): copies (1,1)->3, (1,2)->6, (2,2)->5.
  iv = to_interval_exact(single_element(2, {1, 3}));
  REQUIRE(iv.elements.size() == 3);
  CHECK(iv.elements[0].cost == 3);
  CHECK(iv.elements[1].cost == 6);
  CHECK(iv.elements[2].cost == 5);

  // Unavailable timestep prunes every interval containing it.
  iv = to_interval_exact(single_element(2, {1, 1, 1}));
  CHECK(iv.elements.size() == 6);
  MmmInstance two = one_of_three();
  two.horizon = 3;
  two.holding = {{0, 0, 0}, {kInfCost, 0, 0}, {0, 0, 0}};
  for (const IntervalElement& el : to_interval_exact(two).elements)
    if (el.parent == 0) CHECK_FALSE(el.alive_at(2));
}

TEST_CASE("online interval reduction traces") {
  {
    OnlineIntervalReducer red(Matroid::Uniform(1, 1), {5});
    red.observe({1});
    red.observe({1});
    red.observe({7});
    const auto& els = red.instance().elements;
    REQUIRE(els.size() == 2);
    CHECK(els[0].start == 1);
    CHECK(els[0].end == 2);
    CHECK(els[0].cost == 6);
    CHECK(els[1].start == 3);
    CHECK(els[1].end == 3);
    CHECK(els[1].cost == 12);
  }
  {
    OnlineIntervalReducer red(Matroid::Uniform(1, 1), {5});
    red.observe({9});
    const auto& els = red.instance().elements;
    REQUIRE(els.size() == 1);
    CHECK(els[0].end == 1);
    CHECK(els[0].cost == 14);
  }
  {
    IntervalInstance iv = to_interval_online(single_element(5, {0, 0, 0, 0}));
    REQUIRE(iv.elements.size() == 1);
    CHECK(iv.elements[0].start == 1);
    CHECK(iv.elements[0].end == 4);
    CHECK(iv.elements[0].cost == 5);
  }
}

TEST_CASE("online intervals partition the horizon") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomSpec spec;
    spec.family = seed % 2 ? MatroidKind::Partition : MatroidKind::Graphic;
    spec.num_elements = seed % 2 ? 6 : 4;
    spec.horizon = 4;
    spec.seed = seed;
    MmmInstance inst = random_instance(spec);
    IntervalInstance iv = to_interval_online(inst);
    for (ElementId e = 0; e < inst.num_elements(); ++e) {
      int expect = 1;
      for (const IntervalElement& el : iv.elements) {
        if (el.parent != e) continue;
        CHECK(el.start == expect);  // disjoint and covering, in order
        expect = el.end + 1;
      }
      CHECK(expect == inst.horizon + 1);
    }
    // Exactly one copy per parent alive at each timestep.
    for (int t = 1; t <= inst.horizon; ++t) {
      std::vector<int> seen(inst.num_elements(), 0);
      for (const IntervalElement& el : iv.elements)
        if (el.alive_at(t)) ++seen[el.parent];
      for (int s : seen) CHECK(s == 1);
    }
  }
}

TEST_CASE("exact reduction preserves the optimum") {
  for (std::uint64_t seed = 100; seed < 112; ++seed) {
    RandomSpec spec;
    spec.family = seed % 2 ? MatroidKind::Uniform : MatroidKind::Graphic;
    spec.num_elements = seed % 2 ? 5 : 4;
    spec.horizon = 3;
    spec.seed = seed;
    MmmInstance inst = random_instance(spec);
    Cost opt = exact_dp_spanning(inst).optimum;
    // Brute-force optimum over interval copies: try all subsets of useful
    // copies is too big; instead check greedy output cost is achievable and
    // the reduction never undercuts OPT via copies_to_parents round trips.
    IntervalInstance iv = to_interval_exact(inst);
    GreedyResult g = greedy_msm(iv);
    SolutionSequence sol = copies_to_parents(iv, g.copy_sets);
    CHECK(msm_cost(inst, sol) <= g.interval_cost);
    CHECK(msm_cost(inst, sol) >= opt);
    // The optimal spanning sequence maps to interval copies of equal cost:
    // greedy on intervals can never beat OPT, and OPT is expressible.
    CHECK(g.interval_cost >= opt);
  }
}

TEST_CASE("online reduction costs within factor 4") {
  for (std::uint64_t seed = 200; seed < 215; ++seed) {
    RandomSpec spec;
    spec.family = MatroidKind::Graphic;
    spec.num_elements = 3;  // triangle: at most 9 online copies over T=3
    spec.horizon = 3;
    spec.seed = seed;
    MmmInstance inst = random_instance(spec);
    Cost opt = exact_dp_spanning(inst).optimum;
    // Optimum restricted to the online-reduction copies, via an instance in
    // copy space: parallel edges for copies, copy cost paid on acquisition,
    // availability limited to the copy's interval.
    IntervalInstance iv = to_interval_online(inst);
    const Matroid& mat = inst.matroids.front();
    MmmInstance lifted;
    lifted.horizon = inst.horizon;
    std::vector<std::pair<int, int>> edges;
    for (const IntervalElement& el : iv.elements) {
      edges.push_back(mat.edges()[el.parent]);
      lifted.acquisition.push_back(is_finite(el.cost) ? el.cost : 0);
    }
    lifted.matroids.push_back(Matroid::Graphic(mat.num_vertices(), edges));
    lifted.holding.assign(inst.horizon,
                          std::vector<Cost>(iv.elements.size(), 0));
    for (int t = 0; t < inst.horizon; ++t)
      for (std::size_t i = 0; i < iv.elements.size(); ++i)
        if (!iv.elements[i].alive_at(t + 1) || !is_finite(iv.elements[i].cost))
          lifted.holding[t][i] = kInfCost;
    lifted.validate();
    Cost opt_online = exact_dp_spanning(lifted).optimum;
    // Copy costs omit within-interval holding, which the extension rule
    // bounds by a(e); mapping back to parents at most doubles the cost.
    CHECK(opt <= 2 * opt_online);
    WARN_LE(static_cast<double>(opt_online), 4.0 * static_cast<double>(opt));
  }
}
