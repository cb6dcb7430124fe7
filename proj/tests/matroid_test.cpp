#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "basewalk/matroid.hpp"

using namespace basewalk;

namespace {

Matroid triangle() {
  return Matroid::Graphic(3, {{0, 1}, {1, 2}, {0, 2}});
}

Matroid complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Matroid::Graphic(n, std::move(edges));
}

ElementSet random_subset(const Matroid& mat, std::mt19937_64& rng) {
  ElementSet s;
  for (ElementId e = 0; e < mat.size(); ++e)
    if (rng() % 2) s.push_back(e);
  return s;
}

std::vector<Matroid> small_matroids() {
  std::vector<Matroid> out;
  out.push_back(Matroid::Uniform(6, 3));
  out.push_back(Matroid::Uniform(4, 2));
  out.push_back(Matroid::Partition({0, 0, 1, 1, 1, 2}, {1, 2, 1}));
  out.push_back(triangle());
  out.push_back(complete_graph(4));
  return out;
}

}  // namespace

TEST_CASE("rank per variant") {
  CHECK(Matroid::Uniform(4, 2).rank_of({0, 1, 2}) == 2);
  CHECK(triangle().rank_of({0, 1, 2}) == 2);
  CHECK(Matroid::Partition({0, 0, 1}, {1, 1}).rank_of({0, 1}) == 1);
  CHECK(Matroid::Uniform(4, 2).rank_of({}) == 0);
  CHECK_THROWS_AS(Matroid::Uniform(4, 2).rank_of({4}), InvalidInputError);
  CHECK_THROWS_AS(Matroid::Uniform(4, 2).rank_of({1, 0}), InvalidInputError);
}

TEST_CASE("dual rank formula") {
  for (const Matroid& mat : small_matroids()) CHECK(mat.dual_rank({}) == 0);
  CHECK(Matroid::Uniform(4, 2).dual_rank({0, 1, 2, 3}) == 2);
  CHECK(triangle().dual_rank({1}) == 1);
}

TEST_CASE("span closure") {
  CHECK(triangle().span_of({0, 1}) == ElementSet{0, 1, 2});
  CHECK(Matroid::Uniform(4, 2).span_of({0}) == ElementSet{0});
  CHECK(Matroid::Uniform(4, 2).span_of({0, 1}) == ElementSet{0, 1, 2, 3});
}

TEST_CASE("extend_to_base") {
  CHECK(triangle().extend_to_base({}, {0, 1, 2}) == ElementSet{0, 1});
  CHECK(triangle().extend_to_base({0, 1}, {0, 1, 2}) == ElementSet{0, 1});
  CHECK(Matroid::Uniform(4, 2).extend_to_base({3}, {1, 3}) == ElementSet{1, 3});
  CHECK_THROWS_AS(Matroid::Uniform(4, 2).extend_to_base({}, {0}),
                  InfeasibleError);
  CHECK_THROWS_AS(triangle().extend_to_base({3}, {0, 1, 2}),
                  InvalidInputError);
}

TEST_CASE("min_weight_base") {
  CHECK(triangle().min_weight_base({1, 2, 3}, {0, 1, 2}) == ElementSet{0, 1});
  CHECK(triangle().min_weight_base({5, 5, 5}, {0, 1, 2}) == ElementSet{0, 1});
  Matroid part = Matroid::Partition({0, 0, 1}, {1, 1});
  CHECK(part.min_weight_base({5, 1, 9}, {0, 1, 2}) == ElementSet{1, 2});
  CHECK_THROWS_AS(part.min_weight_base({1, 1, 1}, {0, 1}), InfeasibleError);
}

TEST_CASE("enumerate_bases") {
  CHECK(triangle().enumerate_bases({0, 1, 2}, 100).size() == 3);
  CHECK(Matroid::Uniform(4, 2).enumerate_bases({0, 1, 2, 3}, 100).size() == 6);
  CHECK_THROWS_AS(triangle().enumerate_bases({0, 1, 2}, 2),
                  ResourceLimitError);
  // Cayley count for K4.
  CHECK(complete_graph(4).enumerate_bases(complete_graph(4).ground_set(), 100)
            .size() == 16);
}

TEST_CASE("rank axioms on random subsets") {
  std::mt19937_64 rng(11);
  for (const Matroid& mat : small_matroids()) {
    for (int it = 0; it < 200; ++it) {
      ElementSet s = random_subset(mat, rng);
      ElementSet t = random_subset(mat, rng);
      int rs = mat.rank_of(s), rt = mat.rank_of(t);
      CHECK(rs <= static_cast<int>(s.size()));
      CHECK(mat.rank_of(set_union(s, t)) + mat.rank_of(set_intersection(s, t))
            <= rs + rt);
      if (is_subset(s, t)) CHECK(rs <= rt);
      CHECK(mat.rank_of(set_union(s, t)) >= std::max(rs, rt));  // monotone
    }
  }
}

TEST_CASE("dual rank properties") {
  std::mt19937_64 rng(12);
  for (const Matroid& mat : small_matroids()) {
    CHECK(mat.dual_rank(mat.ground_set()) == mat.size() - mat.rank());
    for (int it = 0; it < 100; ++it) {
      ElementSet s = random_subset(mat, rng);
      ElementSet t = set_union(s, random_subset(mat, rng));
      CHECK(mat.dual_rank(s) <= mat.dual_rank(t));
    }
  }
}

TEST_CASE("extend_to_base always returns a base") {
  std::mt19937_64 rng(13);
  for (const Matroid& mat : small_matroids()) {
    for (int it = 0; it < 50; ++it) {
      ElementSet avail = random_subset(mat, rng);
      if (!mat.is_spanning(avail)) continue;
      ElementSet base = mat.extend_to_base({}, avail);
      CHECK(static_cast<int>(base.size()) == mat.rank());
      CHECK(mat.rank_of(base) == mat.rank());
      CHECK(is_subset(base, avail));
    }
  }
}

TEST_CASE("min_weight_base matches brute force") {
  std::mt19937_64 rng(14);
  for (const Matroid& mat : small_matroids()) {
    for (int it = 0; it < 50; ++it) {
      std::vector<Cost> w(mat.size());
      for (Cost& v : w) v = static_cast<Cost>(rng() % 20);
      ElementSet base = mat.min_weight_base(w, mat.ground_set());
      Cost got = 0;
      for (ElementId e : base) got += w[e];
      Cost best = kInfCost;
      for (const ElementSet& b :
           mat.enumerate_bases(mat.ground_set(), 10000)) {
        Cost c = 0;
        for (ElementId e : b) c += w[e];
        best = std::min(best, c);
      }
      CHECK(got == best);
    }
  }
}
