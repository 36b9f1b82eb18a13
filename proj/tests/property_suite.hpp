#pragma once

// Randomized structural checks with fixed seeds. Shared by the doctest suite
// and the acceptance binary; each check returns its tally instead of asserting.

#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "shacalc/builtins.hpp"
#include "shacalc/error.hpp"
#include "shacalc/multinorm.hpp"
#include "shacalc/scenario.hpp"

namespace props {

using namespace shacalc;
using namespace oracle;

struct Result {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 20) failures.push_back(what);
  }
  bool passed() const { return failures.empty() && checks > 0; }
};

struct NamedGroup {
  std::string name;
  GroupPtr group;
};

// Small groups used for the randomized configurations, all of order <= 12.
inline std::vector<NamedGroup> small_groups() {
  std::vector<NamedGroup> out;
  for (std::size_t m = 2; m <= 12; ++m) out.push_back({"C" + std::to_string(m), cyclic(m)});
  out.push_back({"V4", v4()});
  out.push_back({"S3", s3()});
  out.push_back({"D4", d4()});
  out.push_back({"Q8", group_from_permutations(8, {permutation_from_cycles(8, {{0, 2, 1, 3}, {4, 6, 5, 7}}),
                                                   permutation_from_cycles(8, {{0, 4, 1, 5}, {2, 7, 3, 6}})})});
  out.push_back({"C2xC4", make(6, {{{0, 1}}, {{2, 3, 4, 5}}})});
  out.push_back({"C2^3", z2cube()});
  out.push_back({"D5", make(5, {{{0, 1, 2, 3, 4}}, {{1, 4}, {2, 3}}})});
  out.push_back({"A4", a4()});
  out.push_back({"D6", make(6, {{{0, 1, 2, 3, 4, 5}}, {{1, 5}, {2, 4}}})});
  out.push_back({"C2xC6", make(8, {{{0, 1}}, {{2, 3, 4, 5, 6, 7}}})});
  out.push_back({"C2xS3", make(5, {{{0, 1}}, {{2, 3, 4}}, {{2, 3}}})});
  return out;
}

// The ambient groups of every built-in scenario, plus the small pool.
inline std::vector<NamedGroup> builtin_groups() {
  std::vector<NamedGroup> out;
  std::set<std::string> seen;
  for (const auto& b : list_builtins()) {
    Scenario s = parse_scenario(builtin_scenario(b.name));
    std::string key = std::to_string(s.group->degree()) + ":" + s.source["group"]["generators"].dump();
    if (seen.insert(key).second) out.push_back({b.name, s.group});
  }
  return out;
}

inline std::string show(const Structure& s) { return describe(s.torsion) + " + Z^" + std::to_string(s.free_rank); }

inline bool same_hom(const CohMap& a, const CohMap& b) {
  if (a.target.invariant_factors() != b.target.invariant_factors()) return false;
  if (a.matrix().rows() != b.matrix().rows() || a.matrix().cols() != b.matrix().cols()) return false;
  AbGroup t = a.hom.target;
  for (std::size_t c = 0; c < a.matrix().cols(); ++c) {
    IntVector x = a.matrix().column_vector(c), y = b.matrix().column_vector(c);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
    if (!t.is_zero(x)) return false;
  }
  return true;
}

inline Result shapiro() {
  Result r{"Shapiro: H^n(G, Z[G/H]) = H^n(H, Z), n = 1, 2"};
  CohomologyEngine e;
  auto groups = builtin_groups();
  for (const auto& ng : small_groups()) groups.push_back(ng);
  for (const auto& [name, g] : groups)
    for (const auto& h : all_subgroups(g)) {
      GLattice p = permutation_lattice(h);
      GLattice z = trivial_lattice(subgroup_as_group(h), 1);
      for (int n : {1, 2}) {
        Structure lhs = structure_of(e.cohomology_group(p, n)), rhs = structure_of(e.cohomology_group(z, n));
        r.expect(lhs == rhs, name + " H=" + h.description() + " n=" + std::to_string(n) + ": " + show(lhs) +
                                 " vs " + show(rhs));
      }
    }
  return r;
}

inline Result dd_zero() {
  Result r{"d o d = 0 on random lattices"};
  std::mt19937 rng(101);
  for (const auto& [name, g] : small_groups()) {
    if (g->order() > 8) continue;
    for (int t = 0; t < 3; ++t) {
      GLattice m = random_lattice(rng, g, 4);
      BarComplex b(m);
      for (std::size_t n = 0; n <= 1 + (g->order() <= 6); ++n) {
        bool ok = true;
        for (const auto& col : b.coboundary_columns(n)) {
          Cochain f(b.dimension(n + 1));
          for (const auto& en : col) f[en.index] = en.value;
          for (const auto& v : b.coboundary(f, n + 1))
            if (v != 0) ok = false;
        }
        r.expect(ok, name + " n=" + std::to_string(n));
      }
    }
  }
  return r;
}

inline Result restriction_functorial() {
  Result r{"res_{H1->H2} o res_{G->H1} = res_{G->H2}"};
  std::mt19937 rng(102);
  CohomologyEngine e;
  for (const auto& [name, g] : small_groups()) {
    auto subs = all_subgroups(g);
    for (int t = 0; t < 4; ++t) {
      const Subgroup& h1 = subs[rng() % subs.size()];
      std::vector<Subgroup> inside;
      for (const auto& s : subs)
        if (s.is_subgroup_of(h1)) inside.push_back(s);
      const Subgroup& h2 = inside[rng() % inside.size()];
      GroupPtr g1 = subgroup_as_group(h1);
      std::vector<Element> local;
      for (Element x : h2.members()) local.push_back(h1.local_index(x));
      Subgroup h2_in_h1(g1, local);
      GLattice m = random_lattice(rng, g, 6);
      for (int n : {1, 2}) {
        CohMap a = e.restriction_map(m, h1, n);
        CohMap b = e.restriction_map(restrict_lattice(m, h1), h2_in_h1, n);
        CohMap direct = e.restriction_map(m, h2, n);
        r.expect(same_hom(compose(b, a), direct), name + " " + h1.description() + " > " + h2.description());
      }
    }
  }
  return r;
}

inline Result permutation_h1() {
  Result r{"H^1 vanishes on permutation lattices and their restrictions"};
  CohomologyEngine e;
  for (const auto& [name, g] : small_groups())
    for (const auto& h : all_subgroups(g)) {
      GLattice p = permutation_lattice(h);
      r.expect(e.cohomology_group(p, 1).is_trivial(), name + " Z[G/" + h.description() + "]");
      for (const auto& c : cyclic_subgroups(g))
        r.expect(e.cohomology_group(restrict_lattice(p, c), 1).is_trivial(),
                 name + " Z[G/" + h.description() + "] over " + c.description());
    }
  return r;
}

inline Result cyclic_periodicity() {
  Result r{"H^2(<g>, Z) = Z/|g| and H^3(<g>, Z) = 0"};
  CohomologyEngine e;
  auto groups = builtin_groups();
  for (const auto& ng : small_groups()) groups.push_back(ng);
  for (const auto& [name, g] : groups)
    for (const auto& c : cyclic_subgroups(g)) {
      GLattice z = trivial_lattice(subgroup_as_group(c), 1);
      IntVector want;
      if (c.order() > 1) want.push_back(static_cast<long>(c.order()));
      r.expect(e.cohomology_group(z, 2).invariant_factors() == want && e.cohomology_group(z, 2).free_rank() == 0,
               name + " " + c.description() + " H^2");
      r.expect(e.cohomology_group(z, 3).is_trivial() && e.cohomology_group(z, 3).free_rank() == 0,
               name + " " + c.description() + " H^3");
    }
  return r;
}

inline Result six_term_exactness() {
  Result r{"exactness of H^2(Z[G/K]) -> H^2(S) -> H^3(Z) -> H^3(Z[G/K])"};
  CohomologyEngine e;
  for (const auto& [name, g] : small_groups())
    for (const auto& k : all_subgroups(g)) {
      if (k.is_whole()) continue;
      CharacterLattice s = normone_character_lattice(k);
      CohMap a = e.induced_map(s.ses.quot, 2);
      CohMap delta = e.connecting_map(s.ses, 2);
      CohMap c = e.induced_map(s.ses.sub, 3);
      std::string tag = name + " K=" + k.description();
      r.expect(a.hom.image().equals(delta.hom.kernel()), tag + " at H^2(S)");
      r.expect(delta.hom.image().equals(c.hom.kernel()), tag + " at H^3(Z)");
    }
  return r;
}

inline Result regular_normone_sha() {
  Result r{"Sh^2_omega(G, Z[G]/Z) = H^2(G, Z[G]/Z)"};
  CohomologyEngine e;
  for (const auto& [name, g] : small_groups()) {
    GLattice s = normone_character_lattice(trivial_subgroup(g)).lattice;
    ShGroup sh = e.sha_omega(s, 2);
    r.expect(sh.invariant_factors() == sh.ambient.invariant_factors() && sh.inclusion.is_isomorphism(), name);
  }
  return r;
}

inline Result characters_vs_h2() {
  Result r{"Hom(G, Q/Z) = H^2(G, Z)"};
  CohomologyEngine e;
  auto groups = builtin_groups();
  for (const auto& ng : small_groups()) groups.push_back(ng);
  for (const auto& [name, g] : groups)
    for (const auto& h : all_subgroups(g)) {
      GroupPtr hg = subgroup_as_group(h);
      r.expect(h1_dual(hg).structure.moduli == e.cohomology_group(trivial_lattice(hg, 1), 2).invariant_factors(),
               name + " " + h.description());
    }
  return r;
}

// Random field configuration: 2 or 3 proper subgroups with total index at most 10.
inline FieldConfig random_config(std::mt19937& rng, const GroupPtr& g) {
  auto subs = all_subgroups(g);
  std::vector<Subgroup> proper;
  for (const auto& s : subs)
    if (!s.is_whole() && s.index() <= 8) proper.push_back(s);
  FieldConfig cfg{g, {}, {}};
  if (proper.empty()) return cfg;
  std::size_t n = 2 + rng() % 2, total = 0;
  for (int tries = 0; cfg.fields.size() < n && tries < 20; ++tries) {
    const Subgroup& h = proper[rng() % proper.size()];
    if (total + h.index() > 10) continue;
    total += h.index();
    cfg.fields.push_back({"L" + std::to_string(cfg.fields.size() + 1), h});
  }
  return cfg;
}

inline bool vanishing_by_hand(const FieldConfig& cfg, const Partition& p) {
  Subgroup hi = whole_group(cfg.group), hj = whole_group(cfg.group);
  for (auto i : p.I) hi = subgroup_intersection(hi, cfg.fields[i].subgroup);
  for (auto j : p.J) hj = subgroup_intersection(hj, cfg.fields[j].subgroup);
  return subgroup_join(hi, normal_core(hj)).is_whole();
}

inline Result thm21_oracle(int configs = 160) {
  Result r{"vanishing hypothesis implies Sh^2_omega(T) = 0"};
  std::mt19937 rng(103);
  CohomologyEngine e;
  auto groups = small_groups();
  std::size_t positive = 0;
  for (int t = 0; t < configs; ++t) {
    const auto& [name, g] = groups[rng() % groups.size()];
    FieldConfig cfg = random_config(rng, g);
    if (cfg.fields.size() < 2) continue;
    std::vector<Subgroup> subs;
    std::string tag = name;
    for (const auto& f : cfg.fields) {
      subs.push_back(f.subgroup);
      tag += " " + f.subgroup.description();
    }
    bool holds = false;
    for (const auto& p : all_partitions(cfg.fields.size())) {
      bool h = check_thm21(cfg, p).thm21_holds;
      r.expect(h == vanishing_by_hand(cfg, p), tag + ": hypothesis disagrees with the subgroup criterion");
      holds = holds || h;
    }
    if (!holds) continue;
    ++positive;
    IntVector sha = e.sha_omega(multinorm_character_lattice(g, subs).lattice, 2).invariant_factors();
    r.expect(sha.empty(), tag + ": Sh = " + describe(sha));
  }
  r.expect(positive >= 20, "only " + std::to_string(positive) + " configurations met the hypothesis");
  return r;
}

inline Result thm31_oracle(int configs = 160) {
  Result r{"comparison hypothesis implies Sh^2_omega(S) = Sh^2_omega(T)"};
  std::mt19937 rng(104);
  CohomologyEngine e;
  auto groups = small_groups();
  std::size_t positive = 0;
  for (int t = 0; t < configs; ++t) {
    const auto& [name, g] = groups[rng() % groups.size()];
    FieldConfig cfg = random_config(rng, g);
    if (cfg.fields.size() < 2) continue;
    // Half the time pick explicit F_i inside the L_i.
    if (rng() % 2) {
      auto subs = all_subgroups(g);
      for (std::size_t i = 0; i < cfg.fields.size(); ++i) {
        std::vector<Subgroup> inside;
        for (const auto& s : subs)
          if (s.is_subgroup_of(cfg.fields[i].subgroup)) inside.push_back(s);
        cfg.overrides.push_back({"F" + std::to_string(i + 1), i, inside[rng() % inside.size()]});
      }
    }
    std::string tag = name;
    std::vector<Subgroup> fs;
    for (const auto& f : cfg.fields) {
      tag += " " + f.subgroup.description();
      fs.push_back(f.subgroup);
    }
    Subgroup k = field_intersection_subgroup(cfg);
    if (!is_normal(k)) continue;
    bool holds = false;
    for (const auto& p : all_partitions(cfg.fields.size())) {
      try {
        holds = holds || check_thm31(cfg, p).thm31_holds;
      } catch (const Error& err) {
        // An override can fail the surjectivity condition; that just means no conclusion.
        if (err.code() != ErrorCode::BadOverride) r.expect(false, tag + ": " + err.what());
      }
    }
    if (!holds) continue;
    ++positive;
    IntVector sha_s = e.sha_omega(normone_character_lattice(k).lattice, 2).invariant_factors();
    IntVector sha_t = e.sha_omega(multinorm_character_lattice(g, fs).lattice, 2).invariant_factors();
    r.expect(sha_s == sha_t, tag + ": " + describe(sha_s) + " vs " + describe(sha_t));
    FieldConfig plain = cfg;
    plain.overrides.clear();
    try {
      ComparisonReport rep = compare_sha(plain, e);
      if (rep.any_thm31) r.expect(rep.induced_map_is_injective && rep.induced_map_is_surjective_onto_sha_T, tag);
    } catch (const Error& err) {
      r.expect(false, tag + ": " + err.what());
    }
  }
  r.expect(positive >= 20, "only " + std::to_string(positive) + " configurations met the hypothesis");
  return r;
}

inline Result thread_determinism() {
  Result r{"Sh^2_omega independent of thread count and generators"};
  std::mt19937 rng(105);
  CohomologyEngine one, four(EngineConfig{kDefaultEntryBudget, 4, nullptr});
  for (const auto& [name, g] : small_groups()) {
    GLattice m = random_lattice(rng, g, 7);
    ShGroup a = one.sha_omega(m, 2), b = four.sha_omega(m, 2);
    r.expect(a.invariant_factors() == b.invariant_factors() && a.group.representatives() == b.group.representatives() &&
                 serialize(a.ambient) == serialize(b.ambient),
             name);
  }
  // Same D4, different generating sets.
  GroupPtr d = d4(), d_alt = make(4, {{{0, 2}}, {{0, 1, 2, 3}}, {{0, 1}, {2, 3}}});
  auto sha_for = [&](const GroupPtr& g) {
    ShGroup sh = one.sha_omega(multinorm_character_lattice(g, {example36_h1(g), example36_h2(g)}).lattice, 2);
    return serialize(sh.ambient) + to_string(sh.invariant_factors());
  };
  r.expect(d->order() == d_alt->order() && sha_for(d) == sha_for(d_alt), "D4 generators");
  return r;
}

inline std::vector<std::function<Result()>> all_properties() {
  return {shapiro,       dd_zero,        restriction_functorial, permutation_h1,
          cyclic_periodicity, six_term_exactness, regular_normone_sha, characters_vs_h2,
          [] { return thm21_oracle(); }, [] { return thm31_oracle(); }, thread_determinism};
}

}  // namespace props
