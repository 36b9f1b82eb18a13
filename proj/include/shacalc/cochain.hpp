#pragma once

// Normalized inhomogeneous bar complex of a G-lattice M.
//
// C^n consists of the functions f: (G \ {e})^n -> M; a cochain is stored
// densely, the value at (g_1, ..., g_n) in component c sitting at
//   ((g_1 - 1) (N-1)^{n-1} + ... + (g_n - 1)) * rank + c,     N = |G|.
// The differential is the usual one,
//   (df)(g_1..g_{n+1}) = g_1 f(g_2..g_{n+1})
//                        + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
//                        + (-1)^{n+1} f(g_1..g_n),
// where terms with an identity argument vanish.

#include <cstddef>
#include <vector>

#include "shacalc/lattice.hpp"
#include "shacalc/linalg.hpp"

namespace shacalc {

using Cochain = IntVector;

class BarComplex {
 public:
  explicit BarComplex(const GLattice& m);

  const GLattice& lattice() const noexcept { return lattice_; }
  std::size_t group_order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return rank_; }

  std::size_t tuple_count(std::size_t n) const;
  std::size_t dimension(std::size_t n) const { return tuple_count(n) * rank_; }

  // Columns of d_n : C^n -> C^{n+1}, one sparse column per basis cochain of C^n.
  std::vector<SparseVector> coboundary_columns(std::size_t n) const;

  Cochain coboundary(const Cochain& f, std::size_t n) const;

  // Tuple of group elements (no identities) for a tuple index, and back.
  std::vector<Element> tuple_of(std::size_t index, std::size_t n) const;
  std::size_t index_of(const std::vector<Element>& tuple) const;

 private:
  long act(Element g, std::size_t i, std::size_t j) const { return action_[(g * rank_ + i) * rank_ + j]; }

  GLattice lattice_;
  GroupPtr group_;
  std::size_t order_ = 0;
  std::size_t rank_ = 0;
  std::vector<long> action_;
};

// f restricted to H^n, as a cochain of h viewed as a group (subgroup_as_group).
Cochain restrict_cochain(const Cochain& f, std::size_t n, std::size_t rank, const Subgroup& h);

// Pull back f in C^n(G/N, M') along the projection, then apply the inclusion
// M' -> M.
Cochain inflate_cochain(const Cochain& f, std::size_t n, const QuotientGroup& q, const IntMatrix& inclusion);

// Apply a coefficient map pointwise: (phi f)(g..) = matrix * f(g..).
Cochain map_cochain(const Cochain& f, std::size_t tuples, const IntMatrix& matrix);

}  // namespace shacalc
