#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "shacalc/error.hpp"

using namespace shacalc;
using namespace oracle;

namespace {

IntVector inv(const CohGroup& h) { return h.invariant_factors(); }

Subgroup cyclic_rotation(const GroupPtr& d) { return gen(d, {{{0, 1, 2, 3}}}); }

}  // namespace

TEST_CASE("trivial coefficients") {
  CHECK(inv(cohomology_group(trivial_lattice(cyclic(4), 1), 2)) == IntVector{4});
  CHECK(inv(cohomology_group(trivial_lattice(cyclic(4), 1), 1)).empty());
  for (std::size_t m : {2, 3, 4, 5, 6}) {
    CHECK(inv(cohomology_group(trivial_lattice(cyclic(m), 1), 2)) == IntVector{static_cast<long>(m)});
    CHECK(inv(cohomology_group(trivial_lattice(cyclic(m), 1), 3)).empty());
  }
  CHECK(inv(cohomology_group(trivial_lattice(v4(), 1), 3)) == IntVector{2});
  CHECK(inv(cohomology_group(trivial_lattice(v4(), 1), 2)) == IntVector{2, 2});
  CHECK(inv(cohomology_group(trivial_lattice(d4(), 1), 3)) == IntVector{2});
  CHECK(inv(cohomology_group(trivial_lattice(d4(), 1), 2)) == IntVector{2, 2});
  CHECK(inv(cohomology_group(trivial_lattice(s3(), 1), 2)) == IntVector{2});
  CHECK(inv(cohomology_group(trivial_lattice(s3(), 1), 3)).empty());
  CHECK(inv(cohomology_group(trivial_lattice(a4(), 1), 2)) == IntVector{3});
  CHECK(inv(cohomology_group(trivial_lattice(a4(), 1), 3)) == IntVector{2});
  CohGroup h0 = cohomology_group(trivial_lattice(d4(), 2), 0);
  CHECK(h0.free_rank() == 2);
  CHECK(h0.invariant_factors().empty());
}

TEST_CASE("agreement with dense kernel/image computation") {
  std::mt19937 rng(41);
  std::vector<GroupPtr> groups{cyclic(2), cyclic(3), cyclic(4), v4(), s3(), d4()};
  for (const auto& g : groups)
    for (int t = 0; t < 4; ++t) {
      GLattice m = random_lattice(rng, g, g->order() >= 8 ? 5 : 7);
      for (int n = 0; n <= 2; ++n) {
        if (g->order() >= 8 && n == 2 && m.rank() > 4) continue;
        CohGroup h = cohomology_group(m, n);
        CHECK(structure_of(h) == dense_cohomology(m, n));
      }
    }
}

TEST_CASE("agreement with the periodic resolution on cyclic groups") {
  std::mt19937 rng(42);
  for (std::size_t order : {2, 3, 4, 5, 6}) {
    GroupPtr g = cyclic(order);
    Element sigma = g->generators().front();
    for (int t = 0; t < 5; ++t) {
      GLattice m = random_lattice(rng, g, 8);
      for (int n = 0; n <= 3; ++n) CHECK(structure_of(cohomology_group(m, n)) == cyclic_cohomology(m, sigma, n));
    }
  }
  // Rotation by a quarter turn on Z^2: H^1 = Z/2, H^2 = 0.
  GroupPtr c4 = cyclic(4);
  GLattice rot = lattice_from_generators(c4, {IntMatrix::from_rows({{0, -1}, {1, 0}})});
  CHECK(inv(cohomology_group(rot, 1)) == IntVector{2});
  CHECK(inv(cohomology_group(rot, 2)).empty());
}

TEST_CASE("permutation lattices have no H^1") {
  for (const auto& g : {v4(), d4(), a4(), s3()})
    for (const auto& h : all_subgroups(g)) CHECK(cohomology_group(permutation_lattice(h), 1).is_trivial());
}

TEST_CASE("cocycle coordinates") {
  CohGroup h = cohomology_group(trivial_lattice(cyclic(4), 1), 2);
  REQUIRE(h.generator_count() == 1);
  CHECK(h.coordinates(h.representatives()[0]) == IntVector{1});
  Cochain twice = h.representatives()[0];
  for (auto& v : twice) v *= 3;
  CHECK(h.coordinates(twice) == IntVector{3});
  Cochain bad(twice.size(), 0);
  bad[0] = 1;
  CHECK_THROWS_AS(h.coordinates(bad), Error);
  // A coboundary has zero coordinates.
  BarComplex b(trivial_lattice(cyclic(4), 1));
  Cochain f(b.dimension(1), 0);
  f[1] = 1;
  CHECK(h.coordinates(b.coboundary(f, 1)) == IntVector{0});
}

TEST_CASE("restriction maps") {
  GroupPtr d = d4();
  GLattice t = multinorm_character_lattice(d, {example36_h1(d), example36_h2(d)}).lattice;
  CohMap id = restriction_map(t, whole_group(d), 2);
  CHECK(id.matrix().is_identity());
  CHECK(restriction_map(t, trivial_subgroup(d), 2).is_zero());
  // H^3(V4, Z) restricts to zero on every cyclic subgroup.
  GroupPtr v = v4();
  for (const auto& c : cyclic_subgroups(v)) {
    if (c.is_trivial() || c.is_whole()) continue;
    CHECK(restriction_map(trivial_lattice(v, 1), c, 3).is_zero());
  }
  // H^2(C4, Z) -> H^2(C2, Z) is onto.
  GroupPtr c4 = cyclic(4);
  Subgroup c2 = gen(c4, {{{0, 2}, {1, 3}}});
  CHECK(restriction_map(trivial_lattice(c4, 1), c2, 2).is_surjective());
}

TEST_CASE("local vanishing off the order-4 cyclic subgroup") {
  // With M = Z[G/H2] for the central H2 of the D4 configuration, every element outside
  // the rotation subgroup is a reflection, and H^2(<g>, M) = 0 for it.
  GroupPtr d = d4();
  GLattice m = permutation_lattice(example36_h2(d));
  Subgroup rot = cyclic_rotation(d);
  int outside = 0;
  for (const auto& c : cyclic_subgroups(d)) {
    if (c.is_trivial() || c.is_subgroup_of(rot)) continue;
    ++outside;
    CohMap phi = restriction_map(m, c, 2);
    CHECK(phi.is_zero());
    CHECK(phi.target.is_trivial());
  }
  CHECK(outside == 4);
}

TEST_CASE("inflation") {
  GroupPtr d = d4();
  QuotientGroup q = quotient_group(center(d));
  GLattice z = trivial_lattice(d, 1);
  FixedQuotientLattice fz = fixed_quotient_lattice(z, q);
  CohMap inf3 = CohomologyEngine().inflation_map(q, fz.lattice, fz.inclusion, z, 3);
  CHECK(inv(inf3.source) == IntVector{2});
  CHECK(inf3.is_zero());
  // Trivial N gives the identity.
  QuotientGroup q1 = quotient_group(trivial_subgroup(d));
  FixedQuotientLattice f1 = fixed_quotient_lattice(z, q1);
  CohMap inf_id = CohomologyEngine().inflation_map(q1, f1.lattice, f1.inclusion, z, 2);
  CHECK(inf_id.is_isomorphism());
  // Degree 0 is the identification with fixed points.
  GLattice p = permutation_lattice(trivial_subgroup(d));
  FixedQuotientLattice fp = fixed_quotient_lattice(p, q);
  CHECK(CohomologyEngine().inflation_map(q, fp.lattice, fp.inclusion, p, 0).is_isomorphism());
  // A module that is not M^N is rejected.
  CHECK_THROWS_AS(CohomologyEngine().inflation_map(q, fp.lattice, fp.inclusion, z, 2), Error);
}

TEST_CASE("induced maps") {
  GroupPtr d = d4();
  Subgroup h1 = example36_h1(d), h2 = example36_h2(d);
  GLattice t = multinorm_character_lattice(d, {h1, h2}).lattice;
  LatticeMorphism id{t, t, IntMatrix::identity(t.rank())};
  CHECK(induced_map(id, 2).is_isomorphism());
  LatticeMorphism zero{t, t, IntMatrix(t.rank(), t.rank())};
  CHECK(induced_map(zero, 2).is_zero());
  // Join = K: H^2(G, S) -> H^2(G, T) is injective.
  Subgroup k = subgroup_join(h1, h2);
  LatticeMorphism f = s_to_t_morphism(d, {h1, h2}, k);
  CHECK(induced_map(f, 2).is_injective());
  GroupPtr a = a4();
  Subgroup a1 = gen(a, {{{1, 2, 3}}}), a2 = gen(a, {{{0, 2, 3}}});
  CHECK(induced_map(s_to_t_morphism(a, {a1, a2}, whole_group(a)), 2).is_injective());
}

TEST_CASE("connecting maps") {
  GroupPtr v = v4();
  CharacterLattice s = normone_character_lattice(trivial_subgroup(v));
  CohMap delta = connecting_map(s.ses, 2);
  CHECK(inv(delta.source) == IntVector{2});
  CHECK(inv(delta.target) == IntVector{2});
  CHECK(delta.is_isomorphism());
  for (std::size_t m : {2, 3, 4}) {
    GroupPtr c = cyclic(m);
    CharacterLattice sc = normone_character_lattice(trivial_subgroup(c));
    CohMap dc = connecting_map(sc.ses, 2);
    CHECK(dc.source.is_trivial());
    CHECK(dc.target.is_trivial());
  }
  // Split sequence Z -> Z + Z -> Z.
  GroupPtr d = d4();
  GLattice z = trivial_lattice(d, 1), z2 = trivial_lattice(d, 2);
  LatticeSES split{{z, z2, IntMatrix::from_rows({{1}, {0}})},
                   {z2, z, IntMatrix::from_rows({{0, 1}})},
                   IntMatrix::from_rows({{1, 0}}),
                   IntMatrix::from_rows({{0}, {1}})};
  REQUIRE(split.verify());
  CHECK(connecting_map(split, 1).is_zero());
  CHECK(connecting_map(split, 2).is_zero());
}

TEST_CASE("characters") {
  CharacterGroup dc = h1_dual(d4());
  CHECK(dc.structure.moduli == IntVector{2, 2});
  CHECK(h1_dual(cyclic(2)).structure.moduli == IntVector{2});
  CHECK(h1_dual(cyclic(6)).structure.moduli == IntVector{6});
  CHECK(h1_dual(a4()).structure.moduli == IntVector{3});
  CHECK(h1_dual(s3()).structure.moduli == IntVector{2});
  GroupPtr d = d4();
  Subgroup z = center(d);
  AbHom res = restrict_characters(dc, h1_dual(subgroup_as_group(z)), z);
  CHECK(res.is_zero());
  Subgroup rot = cyclic_rotation(d);
  CHECK_FALSE(restrict_characters(dc, h1_dual(subgroup_as_group(rot)), rot).is_zero());
}

TEST_CASE("Sh_omega on the standard examples") {
  GroupPtr a = a4();
  GLattice ta = multinorm_character_lattice(a, {gen(a, {{{1, 2, 3}}}), gen(a, {{{0, 2, 3}}})}).lattice;
  CHECK(sha_omega(ta, 2).invariant_factors() == IntVector{2});
  GroupPtr v = v4();
  CHECK(sha_omega(normone_character_lattice(trivial_subgroup(v)).lattice, 2).invariant_factors() == IntVector{2});
  auto vc = cyclic_subgroups(v);
  std::vector<Subgroup> three;
  for (const auto& c : vc)
    if (c.order() == 2) three.push_back(c);
  CHECK(sha_omega(multinorm_character_lattice(v, three).lattice, 2).invariant_factors() == IntVector{2});
  GroupPtr d = d4();
  CHECK(sha_omega(normone_character_lattice(example36_h1(d)).lattice, 2).invariant_factors().empty());
  GLattice t36 = multinorm_character_lattice(d, {example36_h1(d), example36_h2(d)}).lattice;
  CHECK(sha_omega(t36, 2).invariant_factors() == IntVector{2});
  CHECK(inv(cohomology_group(t36, 1)) == IntVector{2});
}

TEST_CASE("relative Sh") {
  GroupPtr v = v4();
  GLattice s = normone_character_lattice(trivial_subgroup(v)).lattice;
  CHECK(sha_relative(s, {{"G", whole_group(v)}}, 2).invariant_factors().empty());
  CHECK(sha_relative(s, {}, 2).invariant_factors() == sha_omega(s, 2).invariant_factors());
  CHECK(sha_relative(s, {{"1", trivial_subgroup(v)}}, 2).invariant_factors() == IntVector{2});
  CHECK(sha_relative(s, {{"1", trivial_subgroup(v)}}, 1).invariant_factors().empty());
}

TEST_CASE("budget and degree limits") {
  GroupPtr d = d4();
  GLattice reg = permutation_lattice(trivial_subgroup(d));
  CohomologyEngine small(EngineConfig{1000, 1, nullptr});
  try {
    small.cohomology_group(reg, 2);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  // Rank-one trivial coefficients are exempt.
  CHECK(small.cohomology_group(trivial_lattice(d, 1), 3).invariant_factors() == IntVector{2});
  CHECK_THROWS_AS(cohomology_group(reg, 4), Error);
  CHECK_THROWS_AS(cohomology_group(reg, -1), Error);
  CHECK(estimated_entries(reg, 2) == 8 * 8 * 8 * 8);
}

TEST_CASE("memoization and serialization") {
  CohomologyEngine e;
  GroupPtr d = d4();
  GLattice t = multinorm_character_lattice(d, {example36_h1(d), example36_h2(d)}).lattice;
  CohGroup a = e.cohomology_group(t, 2);
  std::size_t size = e.memo_size();
  CohGroup b = e.cohomology_group(t, 2);
  CHECK(e.memo_size() == size);
  CHECK(a.representatives() == b.representatives());
  for (int n = 0; n <= 3; ++n) {
    CohGroup h = e.cohomology_group(t, n);
    CohGroup r = deserialize(serialize(h), t, n);
    CHECK(r.invariant_factors() == h.invariant_factors());
    CHECK(r.free_rank() == h.free_rank());
    CHECK(r.representatives() == h.representatives());
  }
  std::string blob = serialize(a);
  CHECK_THROWS_AS(deserialize(blob.substr(0, blob.size() / 2), t, 2), Error);
  CHECK(describe(IntVector{}) == "0");
  CHECK(describe(IntVector{2, 4}) == "Z/2 + Z/4");
}
