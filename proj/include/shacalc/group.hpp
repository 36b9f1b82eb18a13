#pragma once

// Finite groups by full multiplication table, built from permutation generators.
//
// These groups stand in for Galois groups G = Gal(L/k). The Galois
// correspondence is used with one fixed dictionary throughout the library:
//
//   intermediate field E        <->  subgroup Gal(L/E)
//   composite E1.E2             <->  intersection of subgroups
//   intersection E1 ∩ E2        <->  join (generated subgroup)
//   Galois closure of E/k       <->  normal core of Gal(L/E) in G
//   degree [E:k]                <->  index [G:Gal(L/E)]
//
// Elements are indices 0..order-1 with 0 the identity, ordered by the
// lexicographic order of their permutation images. Products compose
// permutations right to left: (g*h)(x) = g(h(x)).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace shacalc {

using Element = std::size_t;
using Permutation = std::vector<std::size_t>;  // image array, 0-indexed

inline constexpr std::size_t kDefaultOrderBound = 64;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  // Multiplication table must be a group law with identity 0.
  FiniteGroup(std::size_t degree, std::vector<Permutation> perm_images, std::vector<Element> generators);

  std::size_t order() const noexcept { return order_; }
  std::size_t degree() const noexcept { return degree_; }
  Element identity() const noexcept { return 0; }
  Element mul(Element a, Element b) const { return mul_[a * order_ + b]; }
  Element inv(Element a) const { return inv_[a]; }
  Element conj(Element g, Element h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
  std::size_t element_order(Element a) const;
  const Permutation& permutation(Element a) const { return perm_images_[a]; }
  const std::vector<Element>& generators() const noexcept { return generators_; }
  std::string element_name(Element a) const;  // cycle notation
  bool is_abelian() const;

  // Exhaustive group-law check: associativity, identity, inverses.
  bool verify_axioms() const;

  // Raw table, row-major; used for digests and coset-free algorithms.
  const std::vector<std::uint16_t>& table() const noexcept { return mul_; }

 private:
  std::size_t order_ = 0;
  std::size_t degree_ = 0;
  std::vector<std::uint16_t> mul_;
  std::vector<Element> inv_;
  std::vector<Permutation> perm_images_;
  std::vector<Element> generators_;
};

class Subgroup {
 public:
  Subgroup(GroupPtr parent, std::vector<Element> members);

  const GroupPtr& parent() const noexcept { return parent_; }
  const std::vector<Element>& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  std::size_t index() const { return parent_->order() / members_.size(); }
  bool contains(Element g) const { return mask_[g]; }
  bool is_subgroup_of(const Subgroup& other) const;
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == parent_->order(); }
  // Position of a member within members(), i.e. its index in the subgroup-as-group.
  std::size_t local_index(Element g) const;
  std::string description() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }

 private:
  GroupPtr parent_;
  std::vector<Element> members_;
  std::vector<bool> mask_;
};

struct QuotientGroup {
  GroupPtr parent;
  Subgroup kernel;
  GroupPtr quotient;
  std::vector<Element> projection;  // parent element -> quotient element
  std::vector<Element> section;     // quotient element -> minimal coset representative
};

// Permutation from 0-indexed cycle notation.
Permutation permutation_from_cycles(std::size_t degree, const std::vector<std::vector<std::size_t>>& cycles);

GroupPtr group_from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                 std::size_t order_bound = kDefaultOrderBound);

// Element index of a permutation in G; BadIndex if absent.
Element element_of(const FiniteGroup& g, const Permutation& p);

Subgroup whole_group(const GroupPtr& g);
Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup subgroup_closure(const GroupPtr& g, const std::vector<Element>& seed);
std::vector<Subgroup> cyclic_subgroups(const GroupPtr& g);
std::vector<Subgroup> all_subgroups(const GroupPtr& g);
Subgroup normal_core(const Subgroup& h);
Subgroup normal_core_in(const Subgroup& ambient, const Subgroup& h);  // ∩_{x in ambient} x h x^-1
bool is_normal(const Subgroup& h);
Subgroup subgroup_join(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b);
Subgroup normalizer(const Subgroup& h);
Subgroup derived_subgroup(const GroupPtr& g);
Subgroup center(const GroupPtr& g);
QuotientGroup quotient_group(const Subgroup& n);

// Left cosets gH ordered by their minimal element; coset_of[g] gives the position.
struct CosetTable {
  std::vector<std::vector<Element>> cosets;
  std::vector<std::size_t> coset_of;
};
CosetTable left_cosets(const Subgroup& h);

// Small generating set of h, chosen greedily in member order.
std::vector<Element> generating_set(const Subgroup& h);

// The subgroup viewed as a group in its own right; element i is h.members()[i].
GroupPtr subgroup_as_group(const Subgroup& h);

}  // namespace shacalc
