#pragma once

// Field configurations L_1..L_n inside a Galois extension L/k with group G,
// the hypothesis checks of the vanishing and comparison theorems, and the
// comparison of Sh^2_ω for the multinorm torus T and the norm-one torus S of
// F = L_1 ∩ ... ∩ L_n.
//
// Translation of the hypotheses into subgroups (dictionary in group.hpp):
//   L_I ∩ E_J = k          <->  join(H_I, Core_G(H_J)) = G
//   F_I ∩ E_J = F          <->  join(C_I, ∩_{x in K} x C_J x^-1) = K
//   Aut_k(F_i) -> Aut_k(F) onto  <->  N_G(H'_i) K = G
// where H_I = ∩_{i in I} H_i, C_I = ∩_{i in I} H'_i and H'_i = Gal(L/F_i).
// The last line: Aut_k(F_i) = N_G(H'_i)/H'_i maps to G/K, and it is onto iff
// the image N_G(H'_i)K/K is all of G/K. Unless overridden, F_i is the Galois
// closure of L_i, i.e. H'_i = Core_G(H_i), which is normal so N_G(H'_i) = G.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "shacalc/cohomology.hpp"

namespace shacalc {

struct FieldOverride {
  std::string label;   // F_i
  std::size_t field;   // index into FieldConfig::fields
  Subgroup subgroup;   // H'_i
};

struct FieldConfig {
  GroupPtr group;
  std::vector<NamedSubgroup> fields;     // L_i
  std::vector<FieldOverride> overrides;  // optional F_i
};

struct Partition {
  std::vector<std::size_t> I, J;  // 0-based field indices
};

struct HypothesisReport {
  Partition partition;
  bool thm21_holds = false;
  bool thm31_evaluated = false;
  bool thm31_holds = false;
  bool f_galois = false;
  bool overrides_nested = true;
  std::vector<bool> aut_surjectivity_per_field;
  std::vector<std::pair<std::string, Subgroup>> witnesses;
};

struct ComparisonReport {
  IntVector sha_S;
  IntVector sha_T;
  bool induced_map_is_injective = false;
  bool induced_map_is_surjective_onto_sha_T = false;
  std::vector<HypothesisReport> hypotheses;
  bool any_thm21 = false;
  bool any_thm31 = false;
  bool f_galois = false;
  std::size_t rank_S = 0;
  std::size_t rank_T = 0;
  std::vector<std::string> warnings;
  std::string interpretation;
};

struct Prop41Report {
  Subgroup derived;
  bool derived_is_center = false;
  bool restriction_h1_zero = false;       // H^1(G, Q/Z) -> H^1(H, Q/Z)
  IntVector h1_h;                         // H^1(H, Q/Z)
  IntVector h3_quotient;                  // H^3(G/H, Z) = H^2(G/H, Q/Z)
  bool inflation_h3_zero = false;         // H^3(G/H, Z) -> H^3(G, Z)
  bool all_passed() const;
};

Subgroup field_intersection_subgroup(const FieldConfig& cfg);

// All bipartitions {I, J} with I containing field 0, both parts nonempty.
std::vector<Partition> all_partitions(std::size_t n);

HypothesisReport check_thm21(const FieldConfig& cfg, const Partition& p);
HypothesisReport check_thm31(const FieldConfig& cfg, const Partition& p);

// H'_i after applying overrides to the default Core_G(H_i).
std::vector<Subgroup> effective_overrides(const FieldConfig& cfg);

ComparisonReport compare_sha(const FieldConfig& cfg, CohomologyEngine& engine);
Prop41Report verify_prop41_chain(const GroupPtr& g, CohomologyEngine& engine);

std::string interpret(const ComparisonReport& report);

// H^1(K, T_K) for the multinorm lattice of the H_i over K = join(H_i); zero
// whenever K is the join.
CohGroup h1_over_k(const FieldConfig& cfg, CohomologyEngine& engine);

nlohmann::json subgroup_json(const Subgroup& h);
nlohmann::json to_json(const HypothesisReport& r);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const Prop41Report& r);
nlohmann::json invariants_json(const IntVector& v);

}  // namespace shacalc
