#include "shacalc/builtins.hpp"

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

struct Entry {
  const char* name;
  const char* description;
  const char* json;
};

// Permutations are 0-indexed. Cycle lists [[..], ..] or image arrays [..].
const Entry kEntries[] = {
    {"a4-pair", "A4 with two non-conjugate order-3 subgroups: trivial intersection, Sh^2_w(T) = Z/2",
     R"({
  "version": "v1",
  "name": "a4-pair",
  "description": "A4 with two non-conjugate order-3 subgroups: trivial intersection, Sh^2_w(T) = Z/2",
  "group": {"degree": 4, "generators": [[[0, 1, 2]], [[0, 1], [2, 3]]]},
  "subgroups": {"H1": [[[1, 2, 3]]], "H2": [[[0, 2, 3]]]},
  "fields": [{"label": "L1", "subgroup": "H1"}, {"label": "L2", "subgroup": "H2"}],
  "tasks": [
    {"id": "sha_omega_T", "kind": "sha_omega", "lattice": {"type": "multinorm"}, "degree": 2,
     "expect": {"invariant_factors": [2], "lattice_rank": 7}},
    {"id": "fixed_T", "kind": "cohomology_probe", "lattice": {"type": "multinorm"}, "degree": 0,
     "expect": {"free_rank": 1, "invariant_factors": []}},
    {"id": "thm21", "kind": "check_thm21", "expect": {"holds": false}},
    {"id": "compare", "kind": "compare_sha",
     "expect": {"sha_S": [], "sha_T": [2], "any_thm21": false, "any_thm31": false}}
  ]
})"},

    {"biquadratic-triple", "Three quadratic subfields of a biquadratic field: Sh^2_w(T) = Z/2",
     R"({
  "version": "v1",
  "name": "biquadratic-triple",
  "description": "Three quadratic subfields of a biquadratic field: Sh^2_w(T) = Z/2",
  "group": {"degree": 4, "generators": [[[0, 1], [2, 3]], [[0, 2], [1, 3]]]},
  "subgroups": {"A": [[[0, 1], [2, 3]]], "B": [[[0, 2], [1, 3]]], "C": [[[0, 3], [1, 2]]]},
  "fields": [{"label": "L1", "subgroup": "A"}, {"label": "L2", "subgroup": "B"}, {"label": "L3", "subgroup": "C"}],
  "tasks": [
    {"id": "sha_omega_T", "kind": "sha_omega", "lattice": {"type": "multinorm"}, "degree": 2,
     "expect": {"invariant_factors": [2], "lattice_rank": 5}},
    {"id": "thm21", "kind": "check_thm21", "expect": {"holds": false}}
  ]
})"},

    {"s3-disjoint", "S3 with a non-normal order-2 subgroup and A3: the vanishing theorem applies",
     R"({
  "version": "v1",
  "name": "s3-disjoint",
  "description": "S3 with a non-normal order-2 subgroup and A3: the vanishing theorem applies",
  "group": {"degree": 3, "generators": [[[0, 1, 2]], [[0, 1]]]},
  "subgroups": {"H1": [[[1, 2]]], "H2": [[[0, 1, 2]]]},
  "fields": [{"label": "L1", "subgroup": "H1"}, {"label": "L2", "subgroup": "H2"}],
  "tasks": [
    {"id": "thm21", "kind": "check_thm21", "partition": {"I": ["L1"], "J": ["L2"]}, "expect": {"holds": true}},
    {"id": "sha_omega_T", "kind": "sha_omega", "lattice": {"type": "multinorm"}, "degree": 2,
     "expect": {"invariant_factors": []}},
    {"id": "compare", "kind": "compare_sha", "expect": {"sha_S": [], "sha_T": [], "any_thm21": true}}
  ]
})"},

    {"example-3-6", "D4 with two order-2 subgroups meeting in a quadratic field: Sh^2_w(T) = Z/2, Sh^2_w(S) = 0",
     R"({
  "version": "v1",
  "name": "example-3-6",
  "description": "D4 with two order-2 subgroups meeting in a quadratic field: Sh^2_w(T) = Z/2, Sh^2_w(S) = 0",
  "group": {"degree": 4, "generators": [[[0, 1, 2, 3]], [[1, 3]]]},
  "subgroups": {"H1": [[[1, 3]]], "H2": [[[0, 2], [1, 3]]]},
  "fields": [{"label": "L1", "subgroup": "H1"}, {"label": "L2", "subgroup": "H2"}],
  "tasks": [
    {"id": "compare", "kind": "compare_sha",
     "expect": {"sha_S": [], "sha_T": [2], "rank_T": 7, "rank_S": 1, "any_thm31": false,
                "induced_map_is_surjective_onto_sha_T": false}},
    {"id": "sha_omega_T", "kind": "sha_omega", "lattice": {"type": "multinorm"}, "degree": 2,
     "expect": {"invariant_factors": [2]}},
    {"id": "h1_T", "kind": "cohomology_probe", "lattice": {"type": "multinorm"}, "degree": 1,
     "expect": {"invariant_factors": [2]}},
    {"id": "thm31", "kind": "check_thm31", "expect": {"holds": false}}
  ]
})"},

    {"thm31-iso-z2cube", "(Z/2)^3 with two equal order-2 field subgroups: Sh^2_w(S) -> Sh^2_w(T) is bijective",
     R"({
  "version": "v1",
  "name": "thm31-iso-z2cube",
  "description": "(Z/2)^3 with two equal order-2 field subgroups: Sh^2_w(S) -> Sh^2_w(T) is bijective",
  "group": {"degree": 6, "generators": [[[0, 1]], [[2, 3]], [[4, 5]]]},
  "subgroups": {"H": [[[0, 1]]]},
  "fields": [{"label": "L1", "subgroup": "H"}, {"label": "L2", "subgroup": "H"}],
  "tasks": [
    {"id": "thm31", "kind": "check_thm31", "expect": {"holds": true}},
    {"id": "compare", "kind": "compare_sha",
     "expect": {"sha_S": [2], "sha_T": [2], "induced_map_is_injective": true,
                "induced_map_is_surjective_onto_sha_T": true, "any_thm31": true}},
    {"id": "sha_omega_S", "kind": "sha_omega", "lattice": {"type": "normone", "subgroup": "K"}, "degree": 2,
     "expect": {"invariant_factors": [2]}}
  ]
})"},

    {"prop-4-1", "Local group-theoretic chain on D4 and the arithmetic checks of the explicit counterexample",
     R"({
  "version": "v1",
  "name": "prop-4-1",
  "description": "Local group-theoretic chain on D4 and the arithmetic checks of the explicit counterexample",
  "group": {"degree": 4, "generators": [[[0, 1, 2, 3]], [[1, 3]]]},
  "tasks": [
    {"id": "chain", "kind": "prop41_chain",
     "expect": {"derived_is_center": true, "restriction_h1_zero": true, "h3_quotient": [2],
                "inflation_h3_zero": true, "all_passed": true}},
    {"id": "arith", "kind": "arith_checks", "checks": [
      {"op": "legendre", "a": -1, "p": 97, "expect": 1},
      {"op": "legendre", "a": 2, "p": 97, "expect": 1},
      {"op": "legendre", "a": 7, "p": 97, "expect": -1},
      {"op": "quartic_symbol", "a": 2, "p": 97, "expect": -1},
      {"op": "eighth_power_2adic", "a": 97, "expect": true},
      {"op": "biquad_norm", "d1": -1, "d2": 2, "coeffs": [3, 0, 1, 1], "expect": 97},
      {"op": "prop41_params", "q": 2, "m": 7, "expect": true},
      {"op": "prop41_params", "q": 5, "m": 17, "expect": true}
    ]}
  ]
})"},

    {"sansuc-biquadratic", "Norm-one torus of a biquadratic extension: Sh^2_w(Z[G]/Z) = Z/2",
     R"({
  "version": "v1",
  "name": "sansuc-biquadratic",
  "description": "Norm-one torus of a biquadratic extension: Sh^2_w(Z[G]/Z) = Z/2",
  "group": {"degree": 4, "generators": [[[0, 1], [2, 3]], [[0, 2], [1, 3]]]},
  "tasks": [
    {"id": "sha_omega_S", "kind": "sha_omega", "lattice": {"type": "normone", "subgroup": "1"}, "degree": 2,
     "expect": {"invariant_factors": [2], "ambient": [2]}}
  ]
})"},

    {"kunyavskii-d4", "Norm-one torus of a non-Galois quartic with group D4: Sh^2_w vanishes",
     R"({
  "version": "v1",
  "name": "kunyavskii-d4",
  "description": "Norm-one torus of a non-Galois quartic with group D4: Sh^2_w vanishes",
  "group": {"degree": 4, "generators": [[[0, 1, 2, 3]], [[1, 3]]]},
  "subgroups": {"H": [[[1, 3]]]},
  "tasks": [
    {"id": "sha_omega_N", "kind": "sha_omega", "lattice": {"type": "normone", "subgroup": "H"}, "degree": 2,
     "expect": {"invariant_factors": [], "lattice_rank": 3}}
  ]
})"},

    {"example-3-5-iv-hypothesis",
     "Q(sqrt2, 4th-root 3) and Q(4th-root 2): the comparison theorem applies with explicit F_i but not with Galois closures",
     R"({
  "version": "v1",
  "name": "example-3-5-iv-hypothesis",
  "description": "Q(sqrt2, 4th-root 3) and Q(4th-root 2): the comparison theorem applies with explicit F_i but not with Galois closures",
  "group": {"degree": 8, "generators": [[1,2,3,0,4,5,6,7],[0,1,2,3,5,6,7,4],[0,3,2,1,4,7,6,5]]},
  "subgroups": {
    "H1": [[0,1,2,3,4,5,6,7],[0,3,2,1,4,7,6,5],[2,3,0,1,4,5,6,7],[2,1,0,3,4,7,6,5]],
    "H2": [[0,1,2,3,4,5,6,7],[0,3,2,1,4,7,6,5],[0,1,2,3,5,6,7,4],[0,3,2,1,5,4,7,6],[0,1,2,3,6,7,4,5],[0,3,2,1,6,5,4,7],[0,1,2,3,7,4,5,6],[0,3,2,1,7,6,5,4]],
    "H2p": [[0,1,2,3,4,5,6,7],[0,1,2,3,5,6,7,4],[0,1,2,3,6,7,4,5],[0,1,2,3,7,4,5,6]]
  },
  "fields": [{"label": "L1", "subgroup": "H1"}, {"label": "L2", "subgroup": "H2"}],
  "overrides": [{"label": "F1", "field": "L1", "subgroup": "H1"}, {"label": "F2", "field": "L2", "subgroup": "H2p"}],
  "tasks": [
    {"id": "thm31_overrides", "kind": "check_thm31", "expect": {"holds": true}},
    {"id": "thm31_closures", "kind": "check_thm31", "use_overrides": false, "expect": {"holds": false}},
    {"id": "compare", "kind": "compare_sha", "stretch": true,
     "expect": {"sha_S": [], "sha_T": [], "any_thm31": true}}
  ]
})"},

    {"prop-4-1-global",
     "Q(i, 4th-root 2) and Q(i, sqrt(7 sqrt2)) over Q: Sh^2_w(T) = Z/2, and Sh^2(T) = Z/2 with Sh^2(S) = 0",
     R"({
  "version": "v1",
  "name": "prop-4-1-global",
  "description": "Q(i, 4th-root 2) and Q(i, sqrt(7 sqrt2)) over Q: Sh^2_w(T) = Z/2, and Sh^2(T) = Z/2 with Sh^2(S) = 0",
  "group": {"degree": 8, "generators": [[1,2,3,0,5,6,7,4],[0,3,2,1,4,7,6,5],[0,1,2,3,6,7,4,5]]},
  "subgroups": {
    "H1": [[0,1,2,3,4,5,6,7],[0,1,2,3,6,7,4,5]],
    "H2": [[0,1,2,3,4,5,6,7],[2,3,0,1,4,5,6,7]],
    "D2": [[0,1,2,3,4,5,6,7],[0,3,2,1,6,5,4,7],[1,2,3,0,5,6,7,4],[1,0,3,2,7,6,5,4],[2,3,0,1,6,7,4,5],[2,1,0,3,4,7,6,5],[3,0,1,2,7,4,5,6],[3,2,1,0,5,4,7,6]],
    "D7": [[0,1,2,3,4,5,6,7],[0,1,2,3,6,7,4,5],[0,3,2,1,4,7,6,5],[0,3,2,1,6,5,4,7]]
  },
  "fields": [{"label": "L1", "subgroup": "H1"}, {"label": "L2", "subgroup": "H2"}],
  "tasks": [
    {"id": "sha_omega_T", "kind": "sha_omega", "stretch": true, "lattice": {"type": "multinorm"}, "degree": 2,
     "expect": {"invariant_factors": [2], "lattice_rank": 15}},
    {"id": "compare", "kind": "compare_sha", "stretch": true,
     "expect": {"sha_S": [2], "sha_T": [2], "induced_map_is_injective": true,
                "induced_map_is_surjective_onto_sha_T": true}},
    {"id": "sha_T", "kind": "sha_relative", "stretch": true, "lattice": {"type": "multinorm"}, "degree": 2,
     "family": ["D2", "D7"], "expect": {"invariant_factors": [2]}},
    {"id": "sha_S", "kind": "sha_relative", "stretch": true, "lattice": {"type": "normone", "subgroup": "K"},
     "degree": 2, "family": ["D2", "D7"], "expect": {"invariant_factors": []}}
  ]
})"},
};

}  // namespace

std::vector<BuiltinInfo> list_builtins() {
  std::vector<BuiltinInfo> out;
  for (const auto& e : kEntries) out.push_back({e.name, e.description});
  return out;
}

bool is_builtin(const std::string& name) {
  for (const auto& e : kEntries)
    if (name == e.name) return true;
  return false;
}

nlohmann::json builtin_scenario(const std::string& name) {
  for (const auto& e : kEntries)
    if (name == e.name) return nlohmann::json::parse(e.json);
  fail(ErrorCode::ParseError, "unknown builtin \"" + name + "\"");
}

}  // namespace shacalc
