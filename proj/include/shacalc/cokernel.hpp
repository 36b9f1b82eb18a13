#pragma once

// Presentation of the cokernel Z^m / <relations> of a sparse integer matrix.
//
// Generators are eliminated through relations that carry a unit coefficient
// (Tietze moves), which keeps the sparse structure of bar-complex boundaries;
// the residual block is finished with a Smith normal form whose row
// transformation is kept as the list of elementary moves (the residual is
// usually tall and thin, so a dense transform would dwarf it). The result
// exposes the torsion subgroup with explicit coordinates and lifts.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "shacalc/linalg.hpp"

namespace shacalc {

class CokernelPresentation {
 public:
  // Elementary row move: swap rows i and j, row_i += factor * row_j, or row_i = -row_i.
  struct RowOp {
    enum Kind : std::uint8_t { Swap = 0, AddMultiple = 1, Negate = 2 };
    Kind kind;
    std::size_t i, j;
    Int factor;
  };

  struct Elimination {
    std::size_t generator;
    SparseVector expression;  // e_generator == expression in the cokernel
  };

  CokernelPresentation() = default;
  static CokernelPresentation build(std::size_t generators, std::vector<SparseVector> relations);

  std::size_t generator_count() const noexcept { return generators_; }
  std::size_t relation_rank() const noexcept { return eliminations_.size() + residual_rank_; }
  std::size_t free_rank() const noexcept { return generators_ - relation_rank(); }

  // Invariant factors (all >= 2) of the torsion subgroup.
  const IntVector& torsion() const noexcept { return torsion_; }

  // Lift of the j-th torsion generator to Z^m.
  IntVector torsion_generator(std::size_t j) const;

  // Coordinates of the class of x in the torsion subgroup, reduced modulo the
  // invariant factors; nullopt when x has a nonzero free component.
  std::optional<IntVector> torsion_coordinates(const IntVector& x) const;

  // Internal state, exposed for serialization.
  struct State {
    std::size_t generators = 0;
    std::vector<Elimination> eliminations;
    std::vector<std::size_t> support;  // residual generators, ascending
    std::vector<RowOp> residual_ops;   // U = product of the moves, applied in order
    IntVector residual_diagonal;       // rank entries
    std::vector<SparseVector> torsion_lifts;
  };
  State state() const;
  static CokernelPresentation from_state(State s);

 private:
  void finish_residual(const std::vector<SparseVector>& residual);
  static void apply(const RowOp& op, IntVector& v);

  std::size_t generators_ = 0;
  std::vector<Elimination> eliminations_;
  std::vector<std::size_t> support_;
  std::vector<RowOp> residual_ops_;
  IntVector residual_diagonal_;
  std::size_t residual_rank_ = 0;
  IntVector torsion_;
  std::vector<std::size_t> torsion_rows_;
  std::vector<SparseVector> torsion_lifts_;
};

}  // namespace shacalc
