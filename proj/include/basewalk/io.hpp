#pragma once

#include <fstream>

#include <json.hpp>

#include "basewalk/core.hpp"
#include "basewalk/generators.hpp"
#include "basewalk/instance.hpp"
#include "basewalk/matroid.hpp"

namespace basewalk {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Matroid schema:
//   {"type": "uniform", "m": 4, "k": 2}
//   {"type": "partition", "part_of": [0,0,1], "capacity": [1,1]}
//   {"type": "graphic", "vertices": 3, "edges": [[0,1],[1,2],[0,2]]}
// ---------------------------------------------------------------------------

inline Json matroid_to_json(const Matroid& mat) {
  Json j;
  switch (mat.kind()) {
    case MatroidKind::Uniform:
      j["type"] = "uniform";
      j["m"] = mat.size();
      j["k"] = mat.uniform_k();
      break;
    case MatroidKind::Partition:
      j["type"] = "partition";
      j["part_of"] = mat.part_of();
      j["capacity"] = mat.capacities();
      break;
    case MatroidKind::Graphic: {
      j["type"] = "graphic";
      j["vertices"] = mat.num_vertices();
      Json edges = Json::array();
      for (auto [u, v] : mat.edges()) edges.push_back({u, v});
      j["edges"] = std::move(edges);
      break;
    }
  }
  return j;
}

inline Matroid matroid_from_json(const Json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "uniform")
    return Matroid::Uniform(j.at("m").get<int>(), j.at("k").get<int>());
  if (type == "partition")
    return Matroid::Partition(j.at("part_of").get<std::vector<int>>(),
                              j.at("capacity").get<std::vector<int>>());
  if (type == "graphic") {
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : j.at("edges"))
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Matroid::Graphic(j.at("vertices").get<int>(), std::move(edges));
  }
  throw InvalidInputError("unknown matroid type: " + type);
}

// ---------------------------------------------------------------------------
// Instance schema:
//   {"matroid": {...}, "T": int, "acquisition": [int],
//    "holding": [[int|"inf", ...], ...], "cost_scale": int?}
// Time-varying instances use "matroids": [{...}, ...] instead of "matroid".
// ---------------------------------------------------------------------------

inline Json cost_to_json(Cost c) {
  if (!is_finite(c)) return Json("inf");
  return Json(c);
}

inline Cost cost_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfCost;
    throw InvalidInputError("cost must be an integer or \"inf\"");
  }
  Cost c = j.get<Cost>();
  if (c < 0) throw InvalidInputError("costs must be nonnegative");
  return c;
}

inline Json instance_to_json(const MmmInstance& inst) {
  Json j;
  if (inst.time_varying()) {
    Json ms = Json::array();
    for (const Matroid& m : inst.matroids) ms.push_back(matroid_to_json(m));
    j["matroids"] = std::move(ms);
  } else {
    j["matroid"] = matroid_to_json(inst.matroids.front());
  }
  j["T"] = inst.horizon;
  j["acquisition"] = inst.acquisition;
  Json rows = Json::array();
  for (const auto& row : inst.holding) {
    Json r = Json::array();
    for (Cost c : row) r.push_back(cost_to_json(c));
    rows.push_back(std::move(r));
  }
  j["holding"] = std::move(rows);
  if (inst.cost_scale != 1) j["cost_scale"] = inst.cost_scale;
  return j;
}

inline MmmInstance instance_from_json(const Json& j) {
  MmmInstance inst;
  if (j.contains("matroids")) {
    for (const Json& m : j.at("matroids"))
      inst.matroids.push_back(matroid_from_json(m));
  } else {
    inst.matroids.push_back(matroid_from_json(j.at("matroid")));
  }
  inst.horizon = j.at("T").get<int>();
  inst.acquisition = j.at("acquisition").get<std::vector<Cost>>();
  for (const Json& row : j.at("holding")) {
    std::vector<Cost> r;
    for (const Json& c : row) r.push_back(cost_from_json(c));
    inst.holding.push_back(std::move(r));
  }
  if (j.contains("cost_scale")) inst.cost_scale = j.at("cost_scale").get<Cost>();
  inst.validate();
  return inst;
}

// Solution schema: {"kind": "base"|"spanning", "sets": [[int, ...], ...]}
inline Json solution_to_json(const SolutionSequence& sol) {
  Json j;
  j["kind"] = sol.kind == SolutionKind::Base ? "base" : "spanning";
  j["sets"] = sol.sets;
  return j;
}

inline SolutionSequence solution_from_json(const Json& j) {
  SolutionSequence sol;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "base")
    sol.kind = SolutionKind::Base;
  else if (kind == "spanning")
    sol.kind = SolutionKind::Spanning;
  else
    throw InvalidInputError("solution kind must be base or spanning");
  for (const Json& s : j.at("sets")) {
    ElementSet set = s.get<ElementSet>();
    normalize(set);
    sol.sets.push_back(std::move(set));
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Generator specs, shared by `generate` and the bench config:
//   {"family": "uniform"|"partition"|"graphic", "size": int, "T": int,
//    "seed": u64, "acq_min": int?, ...}
//   {"family": "set_cover", "universe": int, "sets": [[int,...],...]}
//   {"family": "gap", "n": int}
//   {"family": "three_dm", "k": int, "edges": [[x,y,z],...], "T": int}
// ---------------------------------------------------------------------------

inline MmmInstance generate_from_json(const Json& j) {
  std::string family = j.at("family").get<std::string>();
  if (family == "set_cover") {
    std::vector<std::vector<int>> sets;
    for (const Json& s : j.at("sets")) sets.push_back(s.get<std::vector<int>>());
    return set_cover_instance(j.at("universe").get<int>(), sets);
  }
  if (family == "gap") return integrality_gap_instance(j.at("n").get<int>()).instance;
  if (family == "three_dm") {
    std::vector<Hyperedge> edges;
    for (const Json& e : j.at("edges"))
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    return three_dm_instance(j.at("k").get<int>(), edges, j.at("T").get<int>());
  }
  RandomSpec spec;
  if (family == "uniform")
    spec.family = MatroidKind::Uniform;
  else if (family == "partition")
    spec.family = MatroidKind::Partition;
  else if (family == "graphic")
    spec.family = MatroidKind::Graphic;
  else
    throw InvalidInputError("unknown generator family: " + family);
  spec.num_elements = j.at("size").get<int>();
  spec.horizon = j.at("T").get<int>();
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.acquisition_min = j.value("acq_min", Cost{0});
  spec.acquisition_max = j.value("acq_max", Cost{10});
  spec.holding_min = j.value("hold_min", Cost{0});
  spec.holding_max = j.value("hold_max", Cost{10});
  spec.unavailable_prob = j.value("unavailable_prob", 0.2);
  return random_instance(spec);
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace basewalk
