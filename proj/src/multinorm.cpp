#include "shacalc/multinorm.hpp"

#include <algorithm>
#include <set>

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

Subgroup intersect_all(const GroupPtr& g, const std::vector<Subgroup>& subs, const std::vector<std::size_t>& idx) {
  Subgroup out = whole_group(g);
  for (std::size_t i : idx) out = subgroup_intersection(out, subs[i]);
  return out;
}

std::vector<Subgroup> field_subgroups(const FieldConfig& cfg) {
  std::vector<Subgroup> out;
  for (const auto& f : cfg.fields) out.push_back(f.subgroup);
  return out;
}

void validate_partition(const FieldConfig& cfg, const Partition& p) {
  const std::size_t n = cfg.fields.size();
  check(!p.I.empty() && !p.J.empty(), ErrorCode::BadPartition, "both parts of the partition must be nonempty");
  std::vector<int> seen(n, 0);
  for (const auto* part : {&p.I, &p.J})
    for (std::size_t i : *part) {
      check(i < n, ErrorCode::BadPartition, "partition refers to field " + std::to_string(i + 1));
      check(seen[i]++ == 0, ErrorCode::BadPartition, "partition parts overlap");
    }
  check(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }), ErrorCode::BadPartition,
        "partition does not cover all fields");
}

std::string part_name(const std::vector<std::size_t>& part) {
  std::string s = "{";
  for (std::size_t k = 0; k < part.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(part[k] + 1);
  }
  return s + "}";
}

}  // namespace

bool Prop41Report::all_passed() const {
  return derived_is_center && restriction_h1_zero && h3_quotient == IntVector{2} && inflation_h3_zero;
}

Subgroup field_intersection_subgroup(const FieldConfig& cfg) {
  check(!cfg.fields.empty(), ErrorCode::Internal, "configuration without fields");
  Subgroup k = cfg.fields.front().subgroup;
  for (const auto& f : cfg.fields) k = subgroup_join(k, f.subgroup);
  return k;
}

std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  if (n < 2) return out;
  // Field 0 always goes to I; each mask picks the rest of I.
  for (std::size_t mask = 0; mask < (std::size_t(1) << (n - 1)); ++mask) {
    Partition p;
    p.I.push_back(0);
    for (std::size_t i = 1; i < n; ++i) ((mask >> (i - 1)) & 1 ? p.I : p.J).push_back(i);
    if (!p.J.empty()) out.push_back(std::move(p));
  }
  return out;
}

HypothesisReport check_thm21(const FieldConfig& cfg, const Partition& p) {
  validate_partition(cfg, p);
  const auto subs = field_subgroups(cfg);
  HypothesisReport r;
  r.partition = p;
  Subgroup hi = intersect_all(cfg.group, subs, p.I);
  Subgroup hj = intersect_all(cfg.group, subs, p.J);
  Subgroup core_j = normal_core(hj);
  r.thm21_holds = subgroup_join(hi, core_j).is_whole();
  r.witnesses.emplace_back("H_I", hi);
  r.witnesses.emplace_back("H_J", hj);
  r.witnesses.emplace_back("core_J", core_j);
  return r;
}

std::vector<Subgroup> effective_overrides(const FieldConfig& cfg) {
  std::vector<Subgroup> out;
  for (const auto& f : cfg.fields) out.push_back(normal_core(f.subgroup));
  std::vector<bool> used(cfg.fields.size(), false);
  for (const auto& o : cfg.overrides) {
    check(o.field < cfg.fields.size(), ErrorCode::BadOverride, "override " + o.label + " refers to no field");
    check(!used[o.field], ErrorCode::BadOverride, "field overridden twice");
    used[o.field] = true;
    out[o.field] = o.subgroup;
  }
  return out;
}

HypothesisReport check_thm31(const FieldConfig& cfg, const Partition& p) {
  HypothesisReport r = check_thm21(cfg, p);
  r.thm31_evaluated = true;
  Subgroup k = field_intersection_subgroup(cfg);
  check(is_normal(k), ErrorCode::NotGaloisF, "F/k is not Galois: K = " + k.description() + " is not normal");
  r.f_galois = true;
  const auto subs = field_subgroups(cfg);
  const auto primes = effective_overrides(cfg);
  for (std::size_t i = 0; i < subs.size(); ++i)
    check(primes[i].is_subgroup_of(subs[i]), ErrorCode::BadOverride,
          "H'_" + std::to_string(i + 1) + " is not contained in H_" + std::to_string(i + 1));
  r.overrides_nested = true;
  bool surjective = true;
  for (const auto& hp : primes) {
    bool s = subgroup_join(normalizer(hp), k).is_whole();
    r.aut_surjectivity_per_field.push_back(s);
    surjective = surjective && s;
  }
  Subgroup ci = intersect_all(cfg.group, primes, p.I);
  Subgroup cj = intersect_all(cfg.group, primes, p.J);
  Subgroup ej = normal_core_in(k, cj);
  r.thm31_holds = surjective && subgroup_join(ci, ej) == k;
  r.witnesses.emplace_back("K", k);
  r.witnesses.emplace_back("C_I", ci);
  r.witnesses.emplace_back("C_J", cj);
  r.witnesses.emplace_back("core_K(C_J)", ej);
  return r;
}

CohGroup h1_over_k(const FieldConfig& cfg, CohomologyEngine& engine) {
  Subgroup k = field_intersection_subgroup(cfg);
  GroupPtr kg = subgroup_as_group(k);
  std::vector<Subgroup> local;
  for (const auto& f : cfg.fields) {
    std::vector<Element> members;
    for (Element x : f.subgroup.members()) members.push_back(k.local_index(x));
    std::sort(members.begin(), members.end());
    local.emplace_back(kg, std::move(members));
  }
  return engine.cohomology_group(multinorm_character_lattice(kg, local).lattice, 1);
}

ComparisonReport compare_sha(const FieldConfig& cfg, CohomologyEngine& engine) {
  ComparisonReport out;
  const auto subs = field_subgroups(cfg);
  Subgroup k = field_intersection_subgroup(cfg);
  CharacterLattice s = normone_character_lattice(k);
  CharacterLattice t = multinorm_character_lattice(cfg.group, subs);
  out.rank_S = s.lattice.rank();
  out.rank_T = t.lattice.rank();
  LatticeMorphism f = s_to_t_morphism(cfg.group, subs, k, &out.warnings);

  ShGroup sha_s = engine.sha_omega(s.lattice, 2);
  ShGroup sha_t = engine.sha_omega(t.lattice, 2);
  out.sha_S = sha_s.invariant_factors();
  out.sha_T = sha_t.invariant_factors();

  // Sh(S) -> Sh(T): push the generators of Sh(S) through f and read them in Sh(T).
  const auto& gens = sha_s.group.representatives();
  IntMatrix m(sha_t.group.generator_count(), gens.size());
  const std::size_t tuples = s.lattice.rank() == 0 ? 0 : gens.empty() ? 0 : gens.front().size() / s.lattice.rank();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    Cochain image = map_cochain(gens[j], tuples, f.matrix);
    auto c = sha_t.group.try_coordinates(image);
    check(c.has_value(), ErrorCode::Internal, "image of Sh(S) is not inside Sh(T)");
    for (std::size_t i = 0; i < c->size(); ++i) m(i, j) = (*c)[i];
  }
  AbHom restricted{sha_s.group.structure(), sha_t.group.structure(), m};
  out.induced_map_is_injective = restricted.is_injective();
  out.induced_map_is_surjective_onto_sha_T = restricted.is_surjective();

  out.f_galois = is_normal(k);
  for (const auto& p : all_partitions(cfg.fields.size())) {
    HypothesisReport r = out.f_galois ? check_thm31(cfg, p) : check_thm21(cfg, p);
    out.any_thm21 = out.any_thm21 || r.thm21_holds;
    out.any_thm31 = out.any_thm31 || r.thm31_holds;
    out.hypotheses.push_back(std::move(r));
  }
  if (out.any_thm21 && !out.sha_T.empty())
    fail(ErrorCode::TheoremViolation, "vanishing hypothesis holds but Sh(T) = " + describe(out.sha_T));
  if (out.any_thm31 && !(out.induced_map_is_injective && out.induced_map_is_surjective_onto_sha_T))
    fail(ErrorCode::TheoremViolation, "comparison hypothesis holds but Sh(S) -> Sh(T) is not bijective");
  out.interpretation = interpret(out);
  return out;
}

Prop41Report verify_prop41_chain(const GroupPtr& g, CohomologyEngine& engine) {
  check(g->order() == 8, ErrorCode::NotD4Shape, "expected a group of order 8");
  Subgroup h = derived_subgroup(g);
  check(h.order() == 2, ErrorCode::NotD4Shape, "derived subgroup has order " + std::to_string(h.order()));
  std::size_t involutions = 0;
  for (Element x = 1; x < g->order(); ++x) involutions += g->element_order(x) == 2;
  check(involutions == 5, ErrorCode::NotD4Shape, "not dihedral: " + std::to_string(involutions) + " involutions");

  Prop41Report r{h, false, false, {}, {}, false};
  r.derived_is_center = h == center(g);

  CharacterGroup g_chars = h1_dual(g);
  CharacterGroup h_chars = h1_dual(subgroup_as_group(h));
  r.h1_h = h_chars.structure.moduli;
  r.restriction_h1_zero = restrict_characters(g_chars, h_chars, h).is_zero();

  QuotientGroup q = quotient_group(h);
  GLattice zq = trivial_lattice(q.quotient, 1);
  GLattice zg = trivial_lattice(g, 1);
  r.h3_quotient = engine.cohomology_group(zq, 3).invariant_factors();
  r.inflation_h3_zero = engine.inflation_map(q, zq, IntMatrix::identity(1), zg, 3).is_zero();
  return r;
}

std::string interpret(const ComparisonReport& r) {
  if (r.rank_T == 0)
    return "Trivial torus, nothing to obstruct: every a in k* is a product of norms.";
  if (r.sha_T.empty())
    return "Sh^2_ω(k, T^) = 0, so the Hasse principle and weak approximation hold for the multinorm "
           "equation prod_i N_{L_i/k}(z_i) = a, for every a in k*.";
  std::string group = describe(r.sha_T);
  if (r.any_thm31)
    return "Sh^2_ω(k, T^) = " + group + " is isomorphic to Sh^2_ω(k, S^): weak approximation holds for "
           "prod_i N_{L_i/k}(z_i) = a exactly when it holds for N_{F/k}(w) = a. The obstruction group is nonzero; "
           "the Hasse principle needs a Brauer-Manin analysis with the actual decomposition groups, which is not "
           "performed here.";
  return "Sh^2_ω(k, T^) = " + group + " (while Sh^2_ω(k, S^) = " + describe(r.sha_S) +
         "): this group obstructs weak approximation for prod_i N_{L_i/k}(z_i) = a at some finite set of places. "
         "Whether the Hasse principle fails for a given a requires a Brauer-Manin analysis with the actual "
         "decomposition groups, which is not performed here.";
}

nlohmann::json invariants_json(const IntVector& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& d : v) {
    if (d.fits_slong_p()) j.push_back(d.get_si());
    else j.push_back(d.get_str());
  }
  return j;
}

nlohmann::json subgroup_json(const Subgroup& h) {
  nlohmann::json members = nlohmann::json::array();
  for (Element x : h.members()) members.push_back(h.parent()->element_name(x));
  return {{"order", h.order()}, {"index", h.index()}, {"members", members}};
}

nlohmann::json to_json(const HypothesisReport& r) {
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [name, h] : r.witnesses) w[name] = subgroup_json(h);
  nlohmann::json j = {{"I", part_name(r.partition.I)},
                      {"J", part_name(r.partition.J)},
                      {"thm21_holds", r.thm21_holds},
                      {"witnesses", w}};
  if (r.thm31_evaluated) {
    j["thm31_holds"] = r.thm31_holds;
    j["f_galois"] = r.f_galois;
    j["aut_surjectivity_per_field"] = r.aut_surjectivity_per_field;
  }
  return j;
}

nlohmann::json to_json(const ComparisonReport& r) {
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : r.hypotheses) hyps.push_back(to_json(h));
  return {{"schema", "v1"},
          {"sha_S", invariants_json(r.sha_S)},
          {"sha_T", invariants_json(r.sha_T)},
          {"rank_S", r.rank_S},
          {"rank_T", r.rank_T},
          {"induced_map_is_injective", r.induced_map_is_injective},
          {"induced_map_is_surjective_onto_sha_T", r.induced_map_is_surjective_onto_sha_T},
          {"f_galois", r.f_galois},
          {"any_thm21", r.any_thm21},
          {"any_thm31", r.any_thm31},
          {"hypotheses", hyps},
          {"warnings", r.warnings},
          {"interpretation", r.interpretation}};
}

nlohmann::json to_json(const Prop41Report& r) {
  return {{"schema", "v1"},
          {"derived_subgroup", subgroup_json(r.derived)},
          {"derived_is_center", r.derived_is_center},
          {"restriction_h1_zero", r.restriction_h1_zero},
          {"h1_derived", invariants_json(r.h1_h)},
          {"h3_quotient", invariants_json(r.h3_quotient)},
          {"inflation_h3_zero", r.inflation_h3_zero},
          {"all_passed", r.all_passed()}};
}

}  // namespace shacalc
