#include "shacalc/abelian.hpp"

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

IntMatrix with_relations(const IntMatrix& p, const AbGroup& ambient) {
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < ambient.dimension(); ++i)
    if (sgn(ambient.moduli[i]) != 0) finite.push_back(i);
  IntMatrix d(ambient.dimension(), finite.size());
  for (std::size_t j = 0; j < finite.size(); ++j) d(finite[j], j) = ambient.moduli[finite[j]];
  return IntMatrix::hstack(p, d);
}

IntMatrix reduce_rows(IntMatrix m, const AbGroup& g) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = reduce_mod(m(r, c), g.moduli[r]);
  return m;
}

}  // namespace

bool AbGroup::is_finite() const {
  for (const auto& m : moduli)
    if (sgn(m) == 0) return false;
  return true;
}

Int AbGroup::order() const {
  Int o = 1;
  for (const auto& m : moduli) o *= m;
  return o;
}

IntVector AbGroup::reduce(IntVector x) const {
  check(x.size() == moduli.size(), ErrorCode::Internal, "abelian reduce: dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = reduce_mod(x[i], moduli[i]);
  return x;
}

bool AbGroup::is_zero(const IntVector& x) const {
  IntVector r = reduce(x);
  for (const auto& v : r)
    if (sgn(v) != 0) return false;
  return true;
}

IntVector AbGroup::torsion_factors() const {
  IntVector t;
  for (const auto& m : moduli)
    if (sgn(m) != 0) t.push_back(m);
  return t;
}

std::size_t AbGroup::free_rank() const {
  std::size_t n = 0;
  for (const auto& m : moduli)
    if (sgn(m) == 0) ++n;
  return n;
}

AbGroup diagonal_group(const IntVector& moduli) {
  AbGroup g;
  for (const auto& m : moduli) {
    check(sgn(m) >= 0, ErrorCode::Internal, "negative modulus");
    if (m != 1) g.moduli.push_back(m);
  }
  return g;
}

AbSubgroup::AbSubgroup(AbGroup ambient, IntMatrix generators)
    : ambient_(std::move(ambient)),
      generators_(std::move(generators)),
      solver_(with_relations(generators_, ambient_)) {
  check(generators_.rows() == ambient_.dimension(), ErrorCode::Internal, "subgroup generators: dimension mismatch");
  const std::size_t q = generators_.cols();
  const IntMatrix full = with_relations(generators_, ambient_);
  const IntMatrix kernel = integer_kernel(full);
  IntMatrix w(q, kernel.cols());
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t c = 0; c < kernel.cols(); ++c) w(r, c) = kernel(r, c);

  SmithForm f = smith_normal_form(w, {.left = true, .left_inv = true});
  transform_ = f.U;
  for (std::size_t i = 0; i < q; ++i) {
    if (i < f.rank) {
      if (f.diagonal[i] == 1) continue;
      structure_.moduli.push_back(f.diagonal[i]);
    } else {
      structure_.moduli.push_back(0);
    }
    kept_.push_back(i);
  }
  basis_ = IntMatrix(ambient_.dimension(), kept_.size());
  if (q > 0) {
    IntMatrix lifted = generators_ * f.U_inv;
    for (std::size_t j = 0; j < kept_.size(); ++j)
      for (std::size_t r = 0; r < ambient_.dimension(); ++r) basis_(r, j) = lifted(r, kept_[j]);
  }
  basis_ = reduce_rows(basis_, ambient_);
}

std::optional<IntVector> AbSubgroup::coordinates(const IntVector& x) const {
  check(x.size() == ambient_.dimension(), ErrorCode::Internal, "subgroup coordinates: dimension mismatch");
  auto sol = solver_.solve(x);
  if (!sol) return std::nullopt;
  const std::size_t q = generators_.cols();
  IntVector w(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(q));
  IntVector u = q == 0 ? IntVector{} : transform_ * w;
  IntVector out(kept_.size());
  for (std::size_t j = 0; j < kept_.size(); ++j) out[j] = u[kept_[j]];
  return structure_.reduce(std::move(out));
}

bool AbSubgroup::contains(const IntVector& x) const { return solver_.solve(x).has_value(); }

bool AbSubgroup::contains_subgroup(const AbSubgroup& other) const {
  for (std::size_t c = 0; c < other.basis_.cols(); ++c)
    if (!contains(other.basis_.column_vector(c))) return false;
  return true;
}

bool AbSubgroup::equals(const AbSubgroup& other) const {
  return contains_subgroup(other) && other.contains_subgroup(*this);
}

bool AbHom::is_well_defined() const {
  if (matrix.rows() != target.dimension() || matrix.cols() != source.dimension()) return false;
  for (std::size_t i = 0; i < source.dimension(); ++i) {
    if (sgn(source.moduli[i]) == 0) continue;
    IntVector col = matrix.column_vector(i);
    for (auto& v : col) v *= source.moduli[i];
    if (!target.is_zero(col)) return false;
  }
  return true;
}

IntVector AbHom::apply(const IntVector& x) const { return target.reduce(matrix * x); }

AbSubgroup AbHom::kernel() const {
  const IntMatrix full = with_relations(matrix, target);
  const IntMatrix k = integer_kernel(full);
  IntMatrix x(source.dimension(), k.cols());
  for (std::size_t r = 0; r < source.dimension(); ++r)
    for (std::size_t c = 0; c < k.cols(); ++c) x(r, c) = k(r, c);
  return AbSubgroup(source, x);
}

AbSubgroup AbHom::image() const { return AbSubgroup(target, matrix); }

bool AbHom::is_injective() const { return kernel().is_trivial(); }

bool AbHom::is_surjective() const {
  AbSubgroup im = image();
  for (std::size_t i = 0; i < target.dimension(); ++i) {
    IntVector e(target.dimension());
    e[i] = 1;
    if (!im.contains(e)) return false;
  }
  return true;
}

bool AbHom::is_zero() const {
  for (std::size_t c = 0; c < matrix.cols(); ++c)
    if (!target.is_zero(matrix.column_vector(c))) return false;
  return true;
}

AbHom AbHom::compose_after(const AbHom& inner) const {
  check(inner.target.moduli == source.moduli, ErrorCode::Internal, "composition: mismatched groups");
  IntMatrix m = matrix.rows() == 0 || inner.matrix.cols() == 0 || matrix.cols() == 0
                    ? IntMatrix(target.dimension(), inner.source.dimension())
                    : matrix * inner.matrix;
  return AbHom{inner.source, target, reduce_rows(std::move(m), target)};
}

}  // namespace shacalc
