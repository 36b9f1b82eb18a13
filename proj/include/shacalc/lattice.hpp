#pragma once

// G-lattices: free Z-modules of finite rank with an action of a finite group
// by unimodular integer matrices, one stored matrix per group element.
//
// The character lattices of the tori are built here:
//   M  = ⊕_i Z[G/H_i]          (characters of the product of Weil restrictions)
//   T  = M / Z·(ε_1, ..., ε_n) (multinorm torus)
//   S  = Z[G/K] / Z·ε_K        (norm-one torus of the intersection field)
// Coset bases are ordered by minimal element.

#include <memory>
#include <string>
#include <vector>

#include "shacalc/group.hpp"
#include "shacalc/linalg.hpp"

namespace shacalc {

class GLattice {
 public:
  GLattice() = default;
  // Validates: one rank x rank matrix per element, identity at 0, homomorphism,
  // unimodular.
  GLattice(GroupPtr group, std::vector<IntMatrix> action, std::vector<std::string> labels);

  const GroupPtr& group() const noexcept { return data_->group; }
  std::size_t rank() const noexcept { return data_->rank; }
  const IntMatrix& action(Element g) const { return data_->action[g]; }
  const std::vector<std::string>& labels() const noexcept { return data_->labels; }
  bool is_trivial_action() const noexcept { return data_->trivial; }

  // Byte string determined by the multiplication table and the action; equal
  // fingerprints mean interchangeable lattices.
  const std::string& fingerprint() const noexcept { return data_->fingerprint; }

  friend bool operator==(const GLattice& a, const GLattice& b) { return a.fingerprint() == b.fingerprint(); }

 private:
  struct Data {
    GroupPtr group;
    std::size_t rank = 0;
    std::vector<IntMatrix> action;
    std::vector<std::string> labels;
    bool trivial = true;
    std::string fingerprint;
  };
  std::shared_ptr<const Data> data_;
};

struct LatticeMorphism {
  GLattice source;
  GLattice target;
  IntMatrix matrix;  // target.rank x source.rank

  bool is_equivariant() const;
};

// 0 -> A --sub--> B --quot--> C -> 0, with Z-linear splittings kept for
// cocycle lifting: retraction * sub.matrix = I, quot.matrix * section = I.
struct LatticeSES {
  LatticeMorphism sub;
  LatticeMorphism quot;
  IntMatrix retraction;  // A.rank x B.rank
  IntMatrix section;     // B.rank x C.rank

  // quot∘sub = 0, ranks add up, sub saturated, exact in the middle.
  bool verify() const;
};

// The tori: lattice plus its defining sequence 0 -> Z -> M -> lattice -> 0.
struct CharacterLattice {
  GLattice lattice;
  LatticeSES ses;
};

// Lattice plus the projection onto it; the sequence with the given sublattice.
struct QuotientLattice {
  GLattice lattice;
  LatticeMorphism projection;
  LatticeSES ses;
};

GLattice trivial_lattice(const GroupPtr& g, std::size_t rank);
GLattice permutation_lattice(const Subgroup& h);
GLattice direct_sum(const std::vector<GLattice>& parts);

// Z -> ⊕_i Z[G/H_i], 1 -> (ε_1, ..., ε_n).
LatticeMorphism diagonal_norm_embedding(const GroupPtr& g, const std::vector<Subgroup>& subgroups);

// Requires an injective equivariant morphism with saturated image.
QuotientLattice quotient_lattice(const GLattice& m, const LatticeMorphism& sub);

CharacterLattice multinorm_character_lattice(const GroupPtr& g, const std::vector<Subgroup>& subgroups);
CharacterLattice normone_character_lattice(const Subgroup& k);

// Z[G/K] -> Z[G/H] sending gK to the sum of the H-cosets inside it.
LatticeMorphism norm_character_map(const Subgroup& k, const Subgroup& h);

// The injective morphism S -> T dual to (z_i) -> prod_i N_{L_i/F}(z_i).
// When K is not the join of the H_i a note is appended to `warnings`.
LatticeMorphism s_to_t_morphism(const GroupPtr& g, const std::vector<Subgroup>& subgroups, const Subgroup& k,
                                std::vector<std::string>* warnings = nullptr);

// The lattice viewed over H (as subgroup_as_group(h)).
GLattice restrict_lattice(const GLattice& m, const Subgroup& h);

// Basis (as columns) of the vectors fixed by every element of h.
IntMatrix fixed_basis(const GLattice& m, const Subgroup& h);

// Inclusion of M^H. For H normal this is a morphism of G-lattices; otherwise
// both sides are viewed over H.
LatticeMorphism fixed_sublattice(const GLattice& m, const Subgroup& h);

// M^N as a lattice over G/N, with its inclusion matrix into M.
struct FixedQuotientLattice {
  GLattice lattice;     // over q.quotient
  IntMatrix inclusion;  // m.rank x lattice.rank
};
FixedQuotientLattice fixed_quotient_lattice(const GLattice& m, const QuotientGroup& q);

}  // namespace shacalc
