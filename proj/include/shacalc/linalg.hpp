#pragma once

// Exact integer linear algebra: dense matrices over arbitrary-precision
// integers, Smith normal form with unimodular transforms, integer kernels
// and integer linear solves.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace shacalc {

using Int = mpz_class;
using IntVector = std::vector<Int>;

inline int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
inline int cmpabs(const Int& a, unsigned long b) { return mpz_cmpabs_ui(a.get_mpz_t(), b); }

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix column(const IntVector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Int> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Int> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector column_vector(std::size_t c) const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  bool is_zero() const;
  bool is_identity() const;

  // Horizontal / vertical concatenation.
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  IntMatrix select_columns(std::span<const std::size_t> cols) const;
  IntMatrix select_rows(std::span<const std::size_t> rows) const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector data_;
};

Int determinant(const IntMatrix& m);

// U * A * V = D with U, V unimodular and D diagonal, d_0 | d_1 | ... | d_{rank-1},
// all positive. Only the requested transforms are accumulated.
struct SmithForm {
  IntVector diagonal;  // length rank, positive, divisibility chain
  std::size_t rank = 0;
  IntMatrix U, U_inv, V, V_inv;
};

struct SmithOptions {
  bool left = false;       // U
  bool left_inv = false;   // U^{-1}
  bool right = false;      // V
  bool right_inv = false;  // V^{-1}
};

SmithForm smith_normal_form(const IntMatrix& a, SmithOptions opts = {});

// Invariant factors only; convenience for tests and reports.
IntVector invariant_factors(const IntMatrix& a);

// Basis of the integer kernel {x : A x = 0}, as columns.
IntMatrix integer_kernel(const IntMatrix& a);

// Integer solution of A x = b if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

// Reusable solver for A x = b with fixed A.
class IntegerSolver {
 public:
  explicit IntegerSolver(const IntMatrix& a);
  std::optional<IntVector> solve(const IntVector& b) const;
  std::size_t rank() const noexcept { return form_.rank; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  SmithForm form_;
};

// L with L * A = I, for A injective with saturated image; nullopt otherwise.
std::optional<IntMatrix> integer_left_inverse(const IntMatrix& a);

// Rank over the rationals.
std::size_t rank(const IntMatrix& a);

// Nonnegative remainder for modulus > 0; identity when modulus == 0.
Int reduce_mod(const Int& x, const Int& modulus);

// Sparse vector with strictly increasing indices and nonzero values.
struct SparseEntry {
  std::size_t index;
  Int value;
};
using SparseVector = std::vector<SparseEntry>;

// a += factor * b, keeping the result canonical.
void axpy(SparseVector& a, const Int& factor, const SparseVector& b);
Int sparse_coefficient(const SparseVector& v, std::size_t index);

std::string to_string(const IntVector& v);

}  // namespace shacalc
