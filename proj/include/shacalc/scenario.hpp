#pragma once

// Scenario files, schema v1.
//
//   {
//     "version": "v1",
//     "name": "...", "description": "...",
//     "group": {"degree": 4, "generators": [[[0, 1, 2, 3]], [1, 0, 2, 3]]},
//     "subgroups": {"H1": [[[1, 3]]], "H2": [[[0, 2], [1, 3]]]},
//     "fields": [{"label": "L1", "subgroup": "H1"}, {"label": "L2", "subgroup": "H2"}],
//     "overrides": [{"label": "F2", "field": "L2", "subgroup": "H2p"}],
//     "tasks": [{"kind": "sha_omega", "lattice": {"type": "multinorm"}, "expect": {...}}]
//   }
//
// A permutation is either an image array [p(0), ..., p(d-1)] or a list of
// cycles [[a, b, c], [d, e]]; both 0-indexed. A subgroup is given by a list of
// generating permutations. The names "G" (whole group), "1" (trivial) and "K"
// (join of the field subgroups, when fields are present) are predefined.
//
// Lattice descriptors:
//   {"type": "multinorm"}                      T for the scenario fields
//   {"type": "multinorm", "subgroups": [..]}   T for the listed subgroups
//   {"type": "normone", "subgroup": "K"}       Z[G/K]/Z
//   {"type": "permutation", "subgroup": "H"}   Z[G/H]
//   {"type": "trivial", "rank": r}              trivial Z^r

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "shacalc/lattice.hpp"
#include "shacalc/multinorm.hpp"

namespace shacalc {

inline constexpr const char* kScenarioVersion = "v1";

struct Scenario {
  std::string name;
  std::string description;
  nlohmann::json source;
  GroupPtr group;
  std::map<std::string, Subgroup> subgroups;
  FieldConfig config;
  std::vector<nlohmann::json> tasks;

  const Subgroup& subgroup(const std::string& name) const;
};

// Throws ParseError (or a group/lattice error) on invalid input.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario_file(const std::string& path);

Permutation parse_permutation(const nlohmann::json& j, std::size_t degree);

GLattice build_lattice(const Scenario& s, const nlohmann::json& descriptor, std::string* description = nullptr);

}  // namespace shacalc
