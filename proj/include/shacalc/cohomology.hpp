#pragma once

// Integral cohomology H^n(G, M), n <= 3, on the normalized bar complex.
//
// For n >= 1 the group H^n is the torsion subgroup of coker(d_{n-1}); the
// quotient C^n / Z^n embeds in C^{n+1}, so it is free, and every lift of a
// torsion class is automatically a cocycle. Cokernels come from sparse unit
// pivoting followed by a Smith normal form of the residual block. H^0 = M^G is
// reported as a free group.
//
// Sh_ω: in the finite model a class is locally trivial at almost all places
// iff it restricts to zero on every cyclic subgroup of G. Unramified
// decomposition groups are cyclic, Chebotarev realizes every cyclic subgroup
// at infinitely many places, and only finitely many places ramify. Genuine
// Sh (all places) depends on the decomposition groups and is offered only as
// sha_relative with a caller-supplied family.
//
// H^1(G, Q/Z) = Hom(G, Q/Z) is computed from the abelianization, and
// H^2(G, Q/Z) is identified with H^3(G, Z) through 0 -> Z -> Q -> Q/Z -> 0.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shacalc/abelian.hpp"
#include "shacalc/cochain.hpp"
#include "shacalc/cokernel.hpp"
#include "shacalc/lattice.hpp"

namespace shacalc {

inline constexpr std::size_t kDefaultEntryBudget = 2'000'000;
inline constexpr int kMaxDegree = 3;

// Maps a cocycle to coordinates on the chosen generators; nullopt when the
// input is not a cocycle.
class CoordinateSystem {
 public:
  virtual ~CoordinateSystem() = default;
  virtual std::optional<IntVector> coordinates(const Cochain& z) const = 0;
};

class CohGroup {
 public:
  CohGroup() = default;
  CohGroup(int degree, GLattice lattice, IntVector invariant_factors, std::size_t free_rank,
           std::vector<Cochain> representatives, std::shared_ptr<const CoordinateSystem> coords);

  int degree() const noexcept { return degree_; }
  const GLattice& lattice() const noexcept { return lattice_; }
  const IntVector& invariant_factors() const noexcept { return invariants_; }
  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Cochain>& representatives() const noexcept { return reps_; }
  std::size_t generator_count() const noexcept { return reps_.size(); }
  bool is_trivial() const noexcept { return reps_.empty(); }
  Int order() const;  // 0 when infinite

  // Torsion summands then free summands.
  AbGroup structure() const;

  // Throws NotACocycle when z is not a cocycle.
  IntVector coordinates(const Cochain& z) const;
  std::optional<IntVector> try_coordinates(const Cochain& z) const { return coords_->coordinates(z); }
  const std::shared_ptr<const CoordinateSystem>& coordinate_system() const noexcept { return coords_; }

  // Reduced cocycle for a coordinate vector.
  Cochain cocycle(const IntVector& coords) const;

 private:
  int degree_ = 0;
  GLattice lattice_;
  IntVector invariants_;
  std::size_t free_rank_ = 0;
  std::vector<Cochain> reps_;
  std::shared_ptr<const CoordinateSystem> coords_;
};

std::string describe(const IntVector& invariant_factors);  // "0", "Z/2", "Z/2 + Z/4"

struct CohMap {
  CohGroup source;
  CohGroup target;
  AbHom hom;  // coordinates

  const IntMatrix& matrix() const noexcept { return hom.matrix; }
  bool is_zero() const { return hom.is_zero(); }
  bool is_injective() const { return hom.is_injective(); }
  bool is_surjective() const { return hom.is_surjective(); }
  bool is_isomorphism() const { return is_injective() && is_surjective(); }
};

// g ∘ f
CohMap compose(const CohMap& g, const CohMap& f);

struct NamedSubgroup {
  std::string name;
  Subgroup subgroup;
};

struct ShGroup {
  CohGroup ambient;
  CohGroup group;     // the kernel, with its own generators
  CohMap inclusion;   // group -> ambient
  std::vector<std::string> family;  // subgroups whose restrictions were killed
  IntVector invariant_factors() const { return group.invariant_factors(); }
};

// Characters of G: Hom(G, Q/Z) = Hom(G^ab, Q/Z).
struct CharacterGroup {
  GroupPtr group;
  AbGroup structure;             // invariant factors of G^ab
  std::vector<IntVector> value;  // value[g][j] = e_j * χ_j(g) mod e_j
  std::vector<Element> dual_generators;  // y_j with χ_i(y_j) = δ_ij / e_j
};

CharacterGroup h1_dual(const GroupPtr& g);

// Restriction Hom(G, Q/Z) -> Hom(H, Q/Z), with `h_chars` = h1_dual(subgroup_as_group(h)).
AbHom restrict_characters(const CharacterGroup& g_chars, const CharacterGroup& h_chars, const Subgroup& h);

// Persistent storage for computed groups, keyed by (group, lattice, degree).
class CohomologyStore {
 public:
  virtual ~CohomologyStore() = default;
  virtual std::optional<std::string> load(const GLattice& m, int n) = 0;
  virtual void save(const GLattice& m, int n, const std::string& blob) = 0;
};

struct EngineConfig {
  std::size_t entry_budget = kDefaultEntryBudget;
  unsigned threads = 1;
  CohomologyStore* store = nullptr;
};

// |G|^{n+1} * rank; trivial Z coefficients are exempt from the budget.
std::size_t estimated_entries(const GLattice& m, int n);

class CohomologyEngine {
 public:
  explicit CohomologyEngine(EngineConfig config = {});

  const EngineConfig& config() const noexcept { return config_; }

  CohGroup cohomology_group(const GLattice& m, int n);

  CohMap restriction_map(const GLattice& m, const Subgroup& h, int n);
  // q.kernel = N; m_fixed over G/N with inclusion into M^N, validated.
  CohMap inflation_map(const QuotientGroup& q, const GLattice& m_fixed, const IntMatrix& inclusion,
                       const GLattice& m, int n);
  CohMap induced_map(const LatticeMorphism& f, int n);
  // δ: H^n(G, C) -> H^{n+1}(G, A) for 0 -> A -> B -> C -> 0.
  CohMap connecting_map(const LatticeSES& ses, int n);

  ShGroup sha_omega(const GLattice& m, int n);
  ShGroup sha_relative(const GLattice& m, const std::vector<NamedSubgroup>& family, int n);

  // Kernel of the joint restriction to `family`, as a Sh-type group.
  ShGroup joint_kernel(const GLattice& m, const std::vector<NamedSubgroup>& family, int n);

  std::size_t memo_size() const;

 private:
  CohGroup compute(const GLattice& m, int n) const;

  EngineConfig config_;
  mutable std::mutex mutex_;
  std::map<std::string, CohGroup> memo_;
};

// Cyclic subgroups of G with display names "<g>", trivial subgroup omitted.
std::vector<NamedSubgroup> named_cyclic_subgroups(const GroupPtr& g);

// Binary form of a computed group (bar or fixed-point coordinates).
std::string serialize(const CohGroup& h);
CohGroup deserialize(std::string_view blob, const GLattice& m, int n);

// Rank of M^G from the character: (1/|G|) sum_g tr rho(g).
std::size_t fixed_rank(const GLattice& m);

// Convenience wrappers over a default engine.
CohGroup cohomology_group(const GLattice& m, int n);
CohMap restriction_map(const GLattice& m, const Subgroup& h, int n);
CohMap induced_map(const LatticeMorphism& f, int n);
CohMap connecting_map(const LatticeSES& ses, int n);
ShGroup sha_omega(const GLattice& m, int n);
ShGroup sha_relative(const GLattice& m, const std::vector<NamedSubgroup>& family, int n);

}  // namespace shacalc
