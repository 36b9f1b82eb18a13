#pragma once

// Finitely generated abelian groups in coordinates: Z/m_1 + ... + Z/m_k where a
// modulus of 0 stands for a copy of Z. Homomorphisms are integer matrices acting
// on coordinate columns.

#include <cstddef>
#include <optional>
#include <vector>

#include "shacalc/linalg.hpp"

namespace shacalc {

struct AbGroup {
  IntVector moduli;  // each 0 (free) or >= 2

  std::size_t dimension() const noexcept { return moduli.size(); }
  bool is_trivial() const noexcept { return moduli.empty(); }
  bool is_finite() const;
  Int order() const;  // 0 when infinite
  IntVector reduce(IntVector x) const;
  bool is_zero(const IntVector& x) const;
  IntVector torsion_factors() const;
  std::size_t free_rank() const;
};

// Subgroup generated by `generators` (columns, ambient coordinates), with its own
// canonical structure and a coordinate map.
class AbSubgroup {
 public:
  AbSubgroup(AbGroup ambient, IntMatrix generators);

  const AbGroup& ambient() const noexcept { return ambient_; }
  const AbGroup& structure() const noexcept { return structure_; }
  // Ambient coordinates of the canonical generators (one column per structure summand).
  const IntMatrix& basis() const noexcept { return basis_; }

  bool contains(const IntVector& x) const;
  // Coordinates relative to the canonical generators; nullopt if x is outside.
  std::optional<IntVector> coordinates(const IntVector& x) const;
  bool is_trivial() const noexcept { return structure_.is_trivial(); }
  bool contains_subgroup(const AbSubgroup& other) const;
  bool equals(const AbSubgroup& other) const;

 private:
  AbGroup ambient_;
  IntMatrix generators_;       // ambient x q
  AbGroup structure_;
  IntMatrix basis_;            // ambient x structure
  IntMatrix transform_;        // U from the relation SNF, q x q
  std::vector<std::size_t> kept_;  // transform rows forming the structure
  IntegerSolver solver_;       // [generators | diag(ambient moduli)]
};

// Group homomorphism between coordinate groups.
struct AbHom {
  AbGroup source;
  AbGroup target;
  IntMatrix matrix;  // target.dim x source.dim

  bool is_well_defined() const;
  IntVector apply(const IntVector& x) const;
  AbSubgroup kernel() const;
  AbSubgroup image() const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_zero() const;
  AbHom compose_after(const AbHom& inner) const;  // this ∘ inner
};

AbGroup diagonal_group(const IntVector& moduli);

}  // namespace shacalc
