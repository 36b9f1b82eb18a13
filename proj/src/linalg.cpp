#include "shacalc/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "shacalc/error.hpp"

namespace shacalc {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    check(rows[i].size() == c, ErrorCode::Internal, "ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::column(const IntVector& v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

IntVector IntMatrix::column_vector(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  check(cols_ == rhs.rows_, ErrorCode::Internal, "matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Int& b = rhs(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  check(cols_ == v.size(), ErrorCode::Internal, "matrix-vector shape mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (sgn(v[k]) != 0) out[i] += (*this)(i, k) * v[k];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  check(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorCode::Internal, "matrix difference shape mismatch");
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return sgn(x) == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  check(a.rows_ == b.rows_, ErrorCode::Internal, "hstack row mismatch");
  IntMatrix out(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
  }
  return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  check(a.cols_ == b.cols_, ErrorCode::Internal, "vstack column mismatch");
  IntMatrix out(a.rows_ + b.rows_, a.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) out(a.rows_ + r, c) = b(r, c);
  return out;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> cols) const {
  IntMatrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
  return out;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> rows) const {
  IntMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(rows[i], c);
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      os << (*this)(r, c).get_str();
    }
  }
  os << ']';
  return os.str();
}

// Bareiss fraction-free elimination.
Int determinant(const IntMatrix& input) {
  check(input.rows() == input.cols(), ErrorCode::Internal, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

class SmithWorker {
 public:
  SmithWorker(const IntMatrix& a, SmithOptions opts) : m_(a), opts_(opts) {
    if (opts_.left) u_ = IntMatrix::identity(a.rows());
    if (opts_.left_inv) u_inv_ = IntMatrix::identity(a.rows());
    if (opts_.right) v_ = IntMatrix::identity(a.cols());
    if (opts_.right_inv) v_inv_ = IntMatrix::identity(a.cols());
  }

  SmithForm run() {
    const std::size_t rows = m_.rows(), cols = m_.cols();
    std::size_t k = 0;
    for (; k < std::min(rows, cols); ++k) {
      if (!bring_min_pivot(k)) break;
      reduce_pivot(k);
      if (sgn(m_(k, k)) < 0) negate_row(k);
    }
    SmithForm out;
    out.rank = k;
    out.diagonal.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.diagonal.push_back(m_(i, i));
    out.U = std::move(u_);
    out.U_inv = std::move(u_inv_);
    out.V = std::move(v_);
    out.V_inv = std::move(v_inv_);
    return out;
  }

 private:
  bool bring_min_pivot(std::size_t k) {
    std::size_t best_r = 0, best_c = 0;
    bool found = false;
    Int best;
    for (std::size_t r = k; r < m_.rows(); ++r) {
      for (std::size_t c = k; c < m_.cols(); ++c) {
        const Int& x = m_(r, c);
        if (sgn(x) == 0) continue;
        if (!found || cmpabs(x, best) < 0) {
          best = abs(x);
          best_r = r;
          best_c = c;
          found = true;
          if (best == 1) break;
        }
      }
      if (found && best == 1) break;
    }
    if (!found) return false;
    if (best_r != k) swap_rows(k, best_r);
    if (best_c != k) swap_cols(k, best_c);
    return true;
  }

  void reduce_pivot(std::size_t k) {
    for (;;) {
      bool restart = false;
      for (std::size_t r = k + 1; r < m_.rows() && !restart; ++r) {
        if (sgn(m_(r, k)) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), m_(r, k).get_mpz_t(), m_(k, k).get_mpz_t());
        if (sgn(q) != 0) add_row(r, k, -q);
        if (sgn(m_(r, k)) != 0) {
          swap_rows(r, k);
          restart = true;
        }
      }
      if (restart) continue;
      for (std::size_t c = k + 1; c < m_.cols() && !restart; ++c) {
        if (sgn(m_(k, c)) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), m_(k, c).get_mpz_t(), m_(k, k).get_mpz_t());
        if (sgn(q) != 0) add_col(c, k, -q);
        if (sgn(m_(k, c)) != 0) {
          swap_cols(c, k);
          restart = true;
        }
      }
      if (restart) continue;
      // Row and column cleared; enforce divisibility of the trailing block.
      if (abs(m_(k, k)) == 1) return;
      for (std::size_t r = k + 1; r < m_.rows() && !restart; ++r) {
        for (std::size_t c = k + 1; c < m_.cols(); ++c) {
          if (!mpz_divisible_p(m_(r, c).get_mpz_t(), m_(k, k).get_mpz_t())) {
            add_row(k, r, 1);
            restart = true;
            break;
          }
        }
      }
      if (!restart) return;
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < m_.cols(); ++c) std::swap(m_(i, c), m_(j, c));
    if (opts_.left)
      for (std::size_t c = 0; c < u_.cols(); ++c) std::swap(u_(i, c), u_(j, c));
    if (opts_.left_inv)
      for (std::size_t r = 0; r < u_inv_.rows(); ++r) std::swap(u_inv_(r, i), u_inv_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m_.rows(); ++r) std::swap(m_(r, i), m_(r, j));
    if (opts_.right)
      for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, j));
    if (opts_.right_inv)
      for (std::size_t c = 0; c < v_inv_.cols(); ++c) std::swap(v_inv_(i, c), v_inv_(j, c));
  }

  // row_dst += q * row_src
  void add_row(std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t c = 0; c < m_.cols(); ++c)
      if (sgn(m_(src, c)) != 0) m_(dst, c) += q * m_(src, c);
    if (opts_.left)
      for (std::size_t c = 0; c < u_.cols(); ++c)
        if (sgn(u_(src, c)) != 0) u_(dst, c) += q * u_(src, c);
    if (opts_.left_inv)
      for (std::size_t r = 0; r < u_inv_.rows(); ++r)
        if (sgn(u_inv_(r, dst)) != 0) u_inv_(r, src) -= q * u_inv_(r, dst);
  }

  // col_dst += q * col_src
  void add_col(std::size_t dst, std::size_t src, const Int& q) {
    for (std::size_t r = 0; r < m_.rows(); ++r)
      if (sgn(m_(r, src)) != 0) m_(r, dst) += q * m_(r, src);
    if (opts_.right)
      for (std::size_t r = 0; r < v_.rows(); ++r)
        if (sgn(v_(r, src)) != 0) v_(r, dst) += q * v_(r, src);
    if (opts_.right_inv)
      for (std::size_t c = 0; c < v_inv_.cols(); ++c)
        if (sgn(v_inv_(dst, c)) != 0) v_inv_(src, c) -= q * v_inv_(dst, c);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < m_.cols(); ++c) m_(i, c) = -m_(i, c);
    if (opts_.left)
      for (std::size_t c = 0; c < u_.cols(); ++c) u_(i, c) = -u_(i, c);
    if (opts_.left_inv)
      for (std::size_t r = 0; r < u_inv_.rows(); ++r) u_inv_(r, i) = -u_inv_(r, i);
  }

  IntMatrix m_;
  SmithOptions opts_;
  IntMatrix u_, u_inv_, v_, v_inv_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a, SmithOptions opts) { return SmithWorker(a, opts).run(); }

IntVector invariant_factors(const IntMatrix& a) { return smith_normal_form(a).diagonal; }

IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a, {.right = true});
  std::vector<std::size_t> cols;
  for (std::size_t c = f.rank; c < a.cols(); ++c) cols.push_back(c);
  if (a.cols() == 0) return IntMatrix(0, 0);
  return f.V.select_columns(cols);
}

IntegerSolver::IntegerSolver(const IntMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), form_(smith_normal_form(a, {.left = true, .right = true})) {}

std::optional<IntVector> IntegerSolver::solve(const IntVector& b) const {
  check(b.size() == rows_, ErrorCode::Internal, "solve: rhs size mismatch");
  IntVector c = rows_ == 0 ? IntVector{} : form_.U * b;
  IntVector y(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i < form_.rank) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), form_.diagonal[i].get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), form_.diagonal[i].get_mpz_t());
    } else if (sgn(c[i]) != 0) {
      return std::nullopt;
    }
  }
  if (cols_ == 0) return y;
  return form_.V * y;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) { return IntegerSolver(a).solve(b); }

std::optional<IntMatrix> integer_left_inverse(const IntMatrix& a) {
  const std::size_t k = a.cols();
  if (k == 0) return IntMatrix(0, a.rows());
  SmithForm f = smith_normal_form(a, {.left = true, .right = true});
  if (f.rank != k) return std::nullopt;
  for (const auto& d : f.diagonal)
    if (d != 1) return std::nullopt;
  std::vector<std::size_t> top(k);
  for (std::size_t i = 0; i < k; ++i) top[i] = i;
  return f.V * f.U.select_rows(top);
}

std::size_t rank(const IntMatrix& a) { return smith_normal_form(a).rank; }

Int reduce_mod(const Int& x, const Int& modulus) {
  if (sgn(modulus) == 0) return x;
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

void axpy(SparseVector& a, const Int& factor, const SparseVector& b) {
  if (sgn(factor) == 0 || b.empty()) return;
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].index < a[i].index) {
      out.push_back({b[j].index, factor * b[j].value});
      ++j;
    } else {
      Int v = a[i].value + factor * b[j].value;
      if (sgn(v) != 0) out.push_back({a[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

Int sparse_coefficient(const SparseVector& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const SparseEntry& e, std::size_t idx) { return e.index < idx; });
  if (it != v.end() && it->index == index) return it->value;
  return 0;
}

std::string to_string(const IntVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s + "]";
}

}  // namespace shacalc
