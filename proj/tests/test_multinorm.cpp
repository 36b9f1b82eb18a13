#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "shacalc/builtins.hpp"
#include "shacalc/error.hpp"
#include "shacalc/multinorm.hpp"
#include "shacalc/scenario.hpp"

using namespace shacalc;
using namespace oracle;

namespace {

FieldConfig config(const GroupPtr& g, const std::vector<Subgroup>& subs) {
  FieldConfig c{g, {}, {}};
  for (std::size_t i = 0; i < subs.size(); ++i) c.fields.push_back({"L" + std::to_string(i + 1), subs[i]});
  return c;
}

FieldConfig a4_pair() {
  GroupPtr a = a4();
  return config(a, {gen(a, {{{1, 2, 3}}}), gen(a, {{{0, 2, 3}}})});
}

FieldConfig example36() {
  GroupPtr d = d4();
  return config(d, {example36_h1(d), example36_h2(d)});
}

Partition p12() { return {{0}, {1}}; }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

nlohmann::json load_data(const std::string& name) {
  std::ifstream in(std::string(SHACALC_DATA_DIR) + "/" + name + ".json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("field intersection subgroup") {
  GroupPtr d = d4();
  CHECK(field_intersection_subgroup(config(d, {whole_group(d), whole_group(d)})).is_whole());
  CHECK(field_intersection_subgroup(a4_pair()).is_whole());
  CHECK(field_intersection_subgroup(example36()).index() == 2);
}

TEST_CASE("partitions") {
  CHECK(all_partitions(1).empty());
  CHECK(all_partitions(2).size() == 1);
  CHECK(all_partitions(3).size() == 3);
  CHECK(all_partitions(4).size() == 7);
  for (const auto& p : all_partitions(4)) {
    CHECK(p.I.front() == 0);
    CHECK(p.I.size() + p.J.size() == 4);
  }
}

TEST_CASE("vanishing hypothesis") {
  GroupPtr s = s3();
  FieldConfig sc = config(s, {gen(s, {{{1, 2}}}), gen(s, {{{0, 1, 2}}})});
  CHECK(check_thm21(sc, p12()).thm21_holds);
  CHECK_FALSE(check_thm21(a4_pair(), p12()).thm21_holds);
  GroupPtr d = d4();
  CHECK(check_thm21(config(d, {whole_group(d), whole_group(d)}), p12()).thm21_holds);
  CHECK(code_of([&] { check_thm21(sc, Partition{{0}, {0}}); }) == ErrorCode::BadPartition);
  CHECK(code_of([&] { check_thm21(sc, Partition{{0}, {}}); }) == ErrorCode::BadPartition);
  CHECK(code_of([&] { check_thm21(sc, Partition{{0}, {5}}); }) == ErrorCode::BadPartition);
}

TEST_CASE("comparison hypothesis") {
  // Two Galois fields.
  GroupPtr z = z2cube();
  Subgroup a = gen(z, {{{0, 1}}}), b = gen(z, {{{2, 3}}});
  CHECK(check_thm31(config(z, {a, b}), p12()).thm31_holds);
  CHECK(check_thm31(config(z, {a, a}), p12()).thm31_holds);
  // The D4 configuration fails for every admissible choice of F_i.
  FieldConfig c = example36();
  CHECK_FALSE(check_thm31(c, p12()).thm31_holds);
  int choices = 0;
  for (const auto& h1p : all_subgroups(c.group))
    for (const auto& h2p : all_subgroups(c.group)) {
      if (!h1p.is_subgroup_of(c.fields[0].subgroup) || !h2p.is_subgroup_of(c.fields[1].subgroup)) continue;
      FieldConfig o = c;
      o.overrides = {{"F1", 0, h1p}, {"F2", 1, h2p}};
      CHECK_FALSE(check_thm31(o, p12()).thm31_holds);
      ++choices;
    }
  CHECK(choices == 4);
  // Errors.
  FieldConfig bad = c;
  bad.overrides = {{"F1", 0, whole_group(c.group)}};
  CHECK(code_of([&] { check_thm31(bad, p12()); }) == ErrorCode::BadOverride);
  GroupPtr d = d4();
  FieldConfig nongalois = config(d, {example36_h1(d), example36_h1(d)});
  CHECK(code_of([&] { check_thm31(nongalois, p12()); }) == ErrorCode::NotGaloisF);
}

TEST_CASE("the order-32 configuration with explicit F_i") {
  Scenario s = parse_scenario(builtin_scenario("example-3-5-iv-hypothesis"));
  CHECK(s.group->order() == 32);
  CHECK(s.subgroup("H1").index() == 8);
  CHECK(s.subgroup("H2").index() == 4);
  CHECK(s.subgroup("K").index() == 2);
  CHECK(check_thm31(s.config, p12()).thm31_holds);
  FieldConfig closures = s.config;
  closures.overrides.clear();
  CHECK_FALSE(check_thm31(closures, p12()).thm31_holds);
}

TEST_CASE("built-in group data matches the independent oracle files") {
  for (const char* name : {"example-3-5-iv", "prop-4-1-global"}) {
    nlohmann::json data = load_data(name);
    Scenario s = parse_scenario(builtin_scenario(std::string(name) == "example-3-5-iv" ? "example-3-5-iv-hypothesis"
                                                                                         : "prop-4-1-global"));
    CHECK(data["generators"] == s.source["group"]["generators"]);
    CHECK(s.group->order() == data["elements"].size());
    for (const auto& [sub, members] : data["subgroups"].items()) {
      REQUIRE(s.subgroups.count(sub) == 1);
      std::set<Permutation> want, got;
      for (const auto& p : members) want.insert(p.get<Permutation>());
      for (Element x : s.subgroup(sub).members()) got.insert(s.group->permutation(x));
      CHECK(want == got);
    }
  }
  Scenario g = parse_scenario(builtin_scenario("prop-4-1-global"));
  CHECK(g.group->order() == 16);
  CHECK(g.subgroup("H1").index() == 8);
  CHECK(g.subgroup("H2").index() == 8);
  CHECK(g.subgroup("K").index() == 4);
  CHECK(is_normal(g.subgroup("K")));
}

TEST_CASE("comparison of Sh for S and T") {
  CohomologyEngine e;
  ComparisonReport r36 = compare_sha(example36(), e);
  CHECK(r36.sha_S.empty());
  CHECK(r36.sha_T == IntVector{2});
  CHECK_FALSE(r36.any_thm31);
  CHECK(r36.rank_T == 7);
  CHECK(r36.rank_S == 1);
  CHECK(r36.interpretation.find("weak approximation") != std::string::npos);
  CHECK(r36.interpretation.find("Z/2") != std::string::npos);

  GroupPtr z = z2cube();
  Subgroup a = gen(z, {{{0, 1}}});
  ComparisonReport rz = compare_sha(config(z, {a, a}), e);
  CHECK(rz.sha_S == IntVector{2});
  CHECK(rz.sha_T == IntVector{2});
  CHECK(rz.induced_map_is_injective);
  CHECK(rz.induced_map_is_surjective_onto_sha_T);
  CHECK(rz.any_thm31);

  GroupPtr s = s3();
  ComparisonReport rs = compare_sha(config(s, {gen(s, {{{1, 2}}}), gen(s, {{{0, 1, 2}}})}), e);
  CHECK(rs.any_thm21);
  CHECK(rs.sha_S.empty());
  CHECK(rs.sha_T.empty());
  CHECK(rs.interpretation.find("Hasse principle and weak approximation hold") != std::string::npos);

  ComparisonReport ra = compare_sha(a4_pair(), e);
  CHECK(ra.sha_T == IntVector{2});
  CHECK_FALSE(ra.any_thm21);

  GroupPtr d = d4();
  ComparisonReport rt = compare_sha(config(d, {whole_group(d)}), e);
  CHECK(rt.rank_T == 0);
  CHECK(rt.interpretation.find("Trivial torus, nothing to obstruct") != std::string::npos);
}

TEST_CASE("H^1 over K vanishes when K is the join") {
  CohomologyEngine e;
  CHECK(h1_over_k(example36(), e).is_trivial());
  CHECK(h1_over_k(a4_pair(), e).is_trivial());
}

TEST_CASE("JSON form of the reports") {
  CohomologyEngine e;
  nlohmann::json j = to_json(compare_sha(example36(), e));
  CHECK(j["schema"] == "v1");
  CHECK(j["sha_T"] == nlohmann::json::array({2}));
  CHECK(j["sha_S"] == nlohmann::json::array());
  CHECK(j["hypotheses"].size() == 1);
  CHECK(j["hypotheses"][0]["I"] == "{1}");
  CHECK(j["hypotheses"][0].contains("thm31_holds"));
}

TEST_CASE("local chain on D4") {
  CohomologyEngine e;
  Prop41Report r = verify_prop41_chain(d4(), e);
  CHECK(r.derived_is_center);
  CHECK(r.restriction_h1_zero);
  CHECK(r.h1_h == IntVector{2});
  CHECK(r.h3_quotient == IntVector{2});
  CHECK(r.inflation_h3_zero);
  CHECK(r.all_passed());
  // The other generating pair of D4 gives the same answers.
  CHECK(verify_prop41_chain(make(4, {{{0, 1, 2, 3}}, {{0, 2}}}), e).all_passed());
  CHECK(code_of([&] { verify_prop41_chain(z2cube(), e); }) == ErrorCode::NotD4Shape);
  CHECK(code_of([&] { verify_prop41_chain(cyclic(8), e); }) == ErrorCode::NotD4Shape);
  // Quaternion group in its regular representation.
  GroupPtr q8 = group_from_permutations(
      8, {permutation_from_cycles(8, {{0, 2, 1, 3}, {4, 6, 5, 7}}), permutation_from_cycles(8, {{0, 4, 1, 5}, {2, 7, 3, 6}})});
  REQUIRE(q8->order() == 8);
  CHECK(code_of([&] { verify_prop41_chain(q8, e); }) == ErrorCode::NotD4Shape);
}
