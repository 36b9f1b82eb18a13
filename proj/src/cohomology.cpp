#include "shacalc/cohomology.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <thread>

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

class BarCoordinates final : public CoordinateSystem {
 public:
  explicit BarCoordinates(CokernelPresentation p) : pres_(std::move(p)) {}
  std::optional<IntVector> coordinates(const Cochain& z) const override {
    if (z.size() != pres_.generator_count()) return std::nullopt;
    return pres_.torsion_coordinates(z);
  }
  const CokernelPresentation& presentation() const noexcept { return pres_; }

 private:
  CokernelPresentation pres_;
};

class FixedCoordinates final : public CoordinateSystem {
 public:
  explicit FixedCoordinates(IntMatrix basis) : basis_(std::move(basis)), solver_(basis_) {}
  std::optional<IntVector> coordinates(const Cochain& z) const override {
    if (z.size() != basis_.rows()) return std::nullopt;
    return solver_.solve(z);
  }
  const IntMatrix& basis() const noexcept { return basis_; }

 private:
  IntMatrix basis_;
  IntegerSolver solver_;
};

class SubCoordinates final : public CoordinateSystem {
 public:
  SubCoordinates(std::shared_ptr<const CoordinateSystem> ambient, AbSubgroup sub)
      : ambient_(std::move(ambient)), sub_(std::move(sub)) {}
  std::optional<IntVector> coordinates(const Cochain& z) const override {
    auto a = ambient_->coordinates(z);
    if (!a) return std::nullopt;
    return sub_.coordinates(*a);
  }

 private:
  std::shared_ptr<const CoordinateSystem> ambient_;
  AbSubgroup sub_;
};

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::size_t tuple_count(const GroupPtr& g, int n) { return ipow(g->order() - 1, static_cast<std::size_t>(n)); }

void check_degree(int n, int max = kMaxDegree) {
  check(n >= 0 && n <= max, ErrorCode::UnsupportedDegree, "degree " + std::to_string(n) + " not supported");
}

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || a->table() == b->table(); }

// Column j of the coordinate matrix is the image of the j-th source generator.
CohMap assemble(const CohGroup& source, const CohGroup& target, const std::vector<Cochain>& images) {
  IntMatrix m(target.generator_count(), source.generator_count());
  for (std::size_t j = 0; j < images.size(); ++j) {
    IntVector c = target.coordinates(images[j]);
    for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
  }
  CohMap out{source, target, AbHom{source.structure(), target.structure(), std::move(m)}};
  check(out.hom.is_well_defined(), ErrorCode::Internal, "induced map on cohomology is not well defined");
  return out;
}

// Runs body(i) for i in [0, count) on up to `threads` workers; rethrows the
// first failure by index.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  std::vector<std::exception_ptr> errors(count);
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned n = std::min<std::size_t>(threads, count);
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Serialization primitives.
class Writer {
 public:
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void integer(const Int& v) {
    std::string s = v.get_str(16);
    u64(s.size());
    out_ += s;
  }
  void vector(const IntVector& v) {
    u64(v.size());
    for (const auto& x : v) integer(x);
  }
  void sparse(const SparseVector& v) {
    u64(v.size());
    for (const auto& e : v) {
      u64(e.index);
      integer(e.value);
    }
  }
  void sparse_dense(const IntVector& v) {
    SparseVector s;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0) s.push_back({i, v[i]});
    u64(v.size());
    sparse(s);
  }
  void matrix(const IntMatrix& m) {
    u64(m.rows());
    u64(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) integer(m(r, c));
  }
  void byte(char c) { out_.push_back(c); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  std::size_t count(std::size_t limit) {
    std::uint64_t v = u64();
    check(v <= limit, ErrorCode::ParseError, "serialized count out of range");
    return static_cast<std::size_t>(v);
  }
  Int integer() {
    std::size_t n = count(1 << 20);
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    Int v;
    check(!s.empty() && v.set_str(s, 16) == 0, ErrorCode::ParseError, "bad serialized integer");
    return v;
  }
  IntVector vector() {
    IntVector v(count(remaining()));
    for (auto& x : v) x = integer();
    return v;
  }
  SparseVector sparse(std::size_t dim) {
    SparseVector v(count(remaining()));
    std::size_t prev = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      v[k].index = count(dim == 0 ? 0 : dim - 1);
      check(k == 0 || v[k].index > prev, ErrorCode::ParseError, "sparse indices not increasing");
      prev = v[k].index;
      v[k].value = integer();
    }
    return v;
  }
  IntVector sparse_dense(std::size_t expected) {
    std::size_t n = count(std::size_t(1) << 32);
    check(n == expected, ErrorCode::ParseError, "serialized cochain has the wrong size");
    IntVector v(n);
    for (auto& e : sparse(n)) v[e.index] = e.value;
    return v;
  }
  IntMatrix matrix() {
    std::size_t r = count(remaining()), c = count(remaining());
    check(r * c <= remaining(), ErrorCode::ParseError, "serialized matrix too large");
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = integer();
    return m;
  }
  char byte() {
    need(1);
    return in_[pos_++];
  }
  bool done() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const { check(in_.size() - pos_ >= n, ErrorCode::ParseError, "truncated blob"); }
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------- CohGroup

CohGroup::CohGroup(int degree, GLattice lattice, IntVector invariant_factors, std::size_t free_rank,
                   std::vector<Cochain> representatives, std::shared_ptr<const CoordinateSystem> coords)
    : degree_(degree),
      lattice_(std::move(lattice)),
      invariants_(std::move(invariant_factors)),
      free_rank_(free_rank),
      reps_(std::move(representatives)),
      coords_(std::move(coords)) {
  for (std::size_t i = 0; i < invariants_.size(); ++i) {
    check(invariants_[i] >= 2, ErrorCode::Internal, "invariant factor below 2");
    check(i == 0 || mpz_divisible_p(invariants_[i].get_mpz_t(), invariants_[i - 1].get_mpz_t()), ErrorCode::Internal,
          "invariant factors do not form a divisibility chain");
  }
  check(reps_.size() == invariants_.size() + free_rank_, ErrorCode::Internal, "one representative per generator");
  check(degree_ == 0 || free_rank_ == 0, ErrorCode::Internal,
        "cohomology in positive degree has a free part; this indicates an elimination bug");
}

Int CohGroup::order() const {
  if (free_rank_ > 0) return 0;
  Int o = 1;
  for (const auto& d : invariants_) o *= d;
  return o;
}

AbGroup CohGroup::structure() const {
  AbGroup g{invariants_};
  for (std::size_t i = 0; i < free_rank_; ++i) g.moduli.push_back(0);
  return g;
}

IntVector CohGroup::coordinates(const Cochain& z) const {
  auto c = coords_->coordinates(z);
  check(c.has_value(), ErrorCode::NotACocycle,
        "cochain is not a cocycle of the degree-" + std::to_string(degree_) + " group");
  return *c;
}

Cochain CohGroup::cocycle(const IntVector& coords) const {
  check(coords.size() == reps_.size(), ErrorCode::Internal, "coordinate vector has the wrong size");
  Cochain z = reps_.empty() ? Cochain{} : Cochain(reps_.front().size());
  AbGroup s = structure();
  for (std::size_t k = 0; k < reps_.size(); ++k) {
    Int c = reduce_mod(coords[k], s.moduli[k]);
    if (sgn(c) == 0) continue;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (sgn(reps_[k][i]) != 0) z[i] += c * reps_[k][i];
  }
  return z;
}

std::string describe(const IntVector& invariant_factors) {
  if (invariant_factors.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) s += " + ";
    s += "Z/" + invariant_factors[i].get_str();
  }
  return s;
}

CohMap compose(const CohMap& g, const CohMap& f) {
  return CohMap{f.source, g.target, g.hom.compose_after(f.hom)};
}

// ------------------------------------------------------------- utilities

std::size_t fixed_rank(const GLattice& m) {
  Int trace = 0;
  for (Element g = 0; g < m.group()->order(); ++g)
    for (std::size_t i = 0; i < m.rank(); ++i) trace += m.action(g)(i, i);
  Int order = static_cast<unsigned long>(m.group()->order());
  check(mpz_divisible_p(trace.get_mpz_t(), order.get_mpz_t()), ErrorCode::Internal, "character sum not divisible");
  Int r = trace / order;
  return r.get_ui();
}

std::size_t estimated_entries(const GLattice& m, int n) {
  const double e = std::pow(static_cast<double>(m.group()->order()), n + 1) * static_cast<double>(m.rank());
  return e > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(e);
}

std::vector<NamedSubgroup> named_cyclic_subgroups(const GroupPtr& g) {
  std::vector<NamedSubgroup> out;
  for (auto& c : cyclic_subgroups(g)) {
    if (c.is_trivial()) continue;
    Element gen = 0;
    for (Element x : c.members())
      if (g->element_order(x) == c.order()) {
        gen = x;
        break;
      }
    out.push_back({"<" + g->element_name(gen) + ">", std::move(c)});
  }
  return out;
}

// ------------------------------------------------------------- characters

CharacterGroup h1_dual(const GroupPtr& g) {
  const std::size_t n = g->order();
  const auto& gens = g->generators();
  CharacterGroup out{g, {}, std::vector<IntVector>(n), {}};
  // Z^G modulo e_a + e_s - e_{as} presents G^ab (s running over generators).
  IntMatrix rel(n, n * gens.size());
  for (Element a = 0; a < n; ++a)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const std::size_t col = a * gens.size() + k;
      rel(a, col) += 1;
      rel(gens[k], col) += 1;
      rel(g->mul(a, gens[k]), col) -= 1;
    }
  std::vector<std::size_t> rows;
  SmithForm f;
  if (gens.empty()) {
    // Trivial group: only e_0, killed by the relation e_e = 0.
    check(n == 1, ErrorCode::Internal, "group without generators must be trivial");
  } else {
    f = smith_normal_form(rel, {.left = true, .left_inv = true});
    check(f.rank == n, ErrorCode::Internal, "abelianization presentation has a free part");
    for (std::size_t i = 0; i < f.rank; ++i)
      if (f.diagonal[i] != 1) {
        rows.push_back(i);
        out.structure.moduli.push_back(f.diagonal[i]);
      }
  }
  for (Element a = 0; a < n; ++a) {
    out.value[a].resize(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) out.value[a][j] = reduce_mod(f.U(rows[j], a), out.structure.moduli[j]);
  }
  for (std::size_t j = 0; j < rows.size(); ++j) {
    Element y = 0;
    for (Element a = 0; a < n; ++a) {
      Int w = reduce_mod(f.U_inv(a, rows[j]), Int(static_cast<unsigned long>(g->element_order(a))));
      for (unsigned long k = 0; k < w.get_ui(); ++k) y = g->mul(y, a);
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
      check(out.value[y][i] == (i == j ? 1 : 0), ErrorCode::Internal, "dual generator does not pair correctly");
    out.dual_generators.push_back(y);
  }
  return out;
}

AbHom restrict_characters(const CharacterGroup& g_chars, const CharacterGroup& h_chars, const Subgroup& h) {
  check(same_group(g_chars.group, h.parent()), ErrorCode::GroupMismatch, "subgroup of a different group");
  check(h_chars.group->order() == h.order(), ErrorCode::GroupMismatch, "character group of a different subgroup");
  const std::size_t rg = g_chars.structure.dimension(), rh = h_chars.structure.dimension();
  IntMatrix m(rh, rg);
  for (std::size_t j = 0; j < rg; ++j) {
    const Int& ej = g_chars.structure.moduli[j];
    for (std::size_t i = 0; i < rh; ++i) {
      const Int& ei = h_chars.structure.moduli[i];
      const Element y = h.members()[h_chars.dual_generators[i]];
      Int num = g_chars.value[y][j] * ei;
      check(mpz_divisible_p(num.get_mpz_t(), ej.get_mpz_t()), ErrorCode::Internal,
            "restricted character has the wrong order");
      m(i, j) = reduce_mod(num / ej, ei);
    }
  }
  return AbHom{g_chars.structure, h_chars.structure, std::move(m)};
}

// ------------------------------------------------------------- engine

CohomologyEngine::CohomologyEngine(EngineConfig config) : config_(config) {}

std::size_t CohomologyEngine::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

CohGroup CohomologyEngine::compute(const GLattice& m, int n) const {
  const std::size_t r = m.rank();
  if (n == 0) {
    IntMatrix basis = fixed_basis(m, whole_group(m.group()));
    check(basis.cols() == fixed_rank(m), ErrorCode::Internal, "fixed-point rank disagrees with the character");
    std::vector<Cochain> reps;
    for (std::size_t c = 0; c < basis.cols(); ++c) reps.push_back(basis.column_vector(c));
    const std::size_t f = basis.cols();
    return CohGroup(0, m, {}, f, std::move(reps), std::make_shared<FixedCoordinates>(std::move(basis)));
  }
  BarComplex bar(m);
  auto relations = bar.coboundary_columns(static_cast<std::size_t>(n - 1));
  CokernelPresentation pres = CokernelPresentation::build(bar.dimension(n), std::move(relations));

  // rank d_0 = r - rank M^G and rank d_k = dim C^k - rank d_{k-1}, since all
  // higher cohomology is finite.
  std::size_t predicted = r - fixed_rank(m);
  for (int k = 1; k < n; ++k) predicted = bar.dimension(k) - predicted;
  check(pres.relation_rank() == predicted, ErrorCode::Internal,
        "boundary rank " + std::to_string(pres.relation_rank()) + " differs from the predicted " +
            std::to_string(predicted));

  std::vector<Cochain> reps;
  for (std::size_t j = 0; j < pres.torsion().size(); ++j) reps.push_back(pres.torsion_generator(j));
  IntVector inv = pres.torsion();
  return CohGroup(n, m, std::move(inv), 0, std::move(reps), std::make_shared<BarCoordinates>(std::move(pres)));
}

CohGroup CohomologyEngine::cohomology_group(const GLattice& m, int n) {
  check_degree(n);
  const bool exempt = m.rank() == 1 && m.is_trivial_action();
  if (!exempt) {
    const std::size_t est = estimated_entries(m, n);
    check(est <= config_.entry_budget, ErrorCode::BudgetExceeded,
          "H^" + std::to_string(n) + " needs about " + std::to_string(est) + " entries, budget " +
              std::to_string(config_.entry_budget));
  }
  const std::string key = m.fingerprint() + "#" + std::to_string(n);
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  std::optional<CohGroup> result;
  if (config_.store) {
    if (auto blob = config_.store->load(m, n)) {
      try {
        result = deserialize(*blob, m, n);
      } catch (const Error&) {
        result.reset();
      }
    }
  }
  if (!result) {
    result = compute(m, n);
    if (config_.store) config_.store->save(m, n, serialize(*result));
  }
  std::lock_guard lock(mutex_);
  return memo_.emplace(key, *result).first->second;
}

CohMap CohomologyEngine::restriction_map(const GLattice& m, const Subgroup& h, int n) {
  check(same_group(m.group(), h.parent()), ErrorCode::GroupMismatch, "restriction to a subgroup of another group");
  CohGroup src = cohomology_group(m, n);
  CohGroup tgt = cohomology_group(restrict_lattice(m, h), n);
  std::vector<Cochain> images;
  for (const auto& z : src.representatives())
    images.push_back(restrict_cochain(z, static_cast<std::size_t>(n), m.rank(), h));
  return assemble(src, tgt, images);
}

CohMap CohomologyEngine::inflation_map(const QuotientGroup& q, const GLattice& m_fixed, const IntMatrix& inclusion,
                                       const GLattice& m, int n) {
  check_degree(n);
  check(same_group(m.group(), q.parent), ErrorCode::NotFixedModule, "lattice is not over the quotiented group");
  check(same_group(m_fixed.group(), q.quotient), ErrorCode::NotFixedModule, "fixed lattice is not over the quotient");
  check(inclusion.rows() == m.rank() && inclusion.cols() == m_fixed.rank(), ErrorCode::NotFixedModule,
        "inclusion has the wrong shape");
  for (Element g = 0; g < m.group()->order(); ++g) {
    if (inclusion.empty()) break;
    const IntMatrix lhs = m.action(g) * inclusion;
    check(lhs == inclusion * m_fixed.action(q.projection[g]), ErrorCode::NotFixedModule,
          "inclusion is not compatible with the quotient action");
  }
  const IntMatrix full = fixed_basis(m, q.kernel);
  check(full.cols() == m_fixed.rank(), ErrorCode::NotFixedModule, "lattice is not the full fixed sublattice");
  if (m_fixed.rank() > 0) {
    check(integer_left_inverse(inclusion).has_value(), ErrorCode::NotFixedModule, "inclusion is not saturated");
  }
  CohGroup src = cohomology_group(m_fixed, n);
  CohGroup tgt = cohomology_group(m, n);
  std::vector<Cochain> images;
  for (const auto& z : src.representatives())
    images.push_back(inflate_cochain(z, static_cast<std::size_t>(n), q, inclusion));
  return assemble(src, tgt, images);
}

CohMap CohomologyEngine::induced_map(const LatticeMorphism& f, int n) {
  check(f.is_equivariant(), ErrorCode::NotEquivariant, "lattice morphism is not equivariant");
  CohGroup src = cohomology_group(f.source, n);
  CohGroup tgt = cohomology_group(f.target, n);
  const std::size_t tuples = tuple_count(f.source.group(), n);
  std::vector<Cochain> images;
  for (const auto& z : src.representatives()) images.push_back(map_cochain(z, tuples, f.matrix));
  return assemble(src, tgt, images);
}

CohMap CohomologyEngine::connecting_map(const LatticeSES& ses, int n) {
  check_degree(n, kMaxDegree - 1);
  const GLattice& a = ses.sub.source;
  const GLattice& b = ses.sub.target;
  const GLattice& c = ses.quot.target;
  CohGroup src = cohomology_group(c, n);
  CohGroup tgt = cohomology_group(a, n + 1);
  // The lift lives in C^n(G, B) and its coboundary in C^{n+1}(G, B).
  const bool exempt = b.rank() == 1 && b.is_trivial_action();
  check(exempt || estimated_entries(b, n + 1) <= config_.entry_budget, ErrorCode::BudgetExceeded,
        "connecting map lift exceeds the entry budget");
  BarComplex bar(b);
  const std::size_t tn = tuple_count(b.group(), n), tn1 = tuple_count(b.group(), n + 1);
  std::vector<Cochain> images;
  for (const auto& z : src.representatives()) {
    Cochain lift = map_cochain(z, tn, ses.section);
    Cochain db = bar.coboundary(lift, static_cast<std::size_t>(n));
    Cochain pulled = map_cochain(db, tn1, ses.retraction);
    check(map_cochain(pulled, tn1, ses.sub.matrix) == db, ErrorCode::Internal,
          "coboundary of the lift does not lie in the sublattice");
    images.push_back(std::move(pulled));
  }
  return assemble(src, tgt, images);
}

ShGroup CohomologyEngine::joint_kernel(const GLattice& m, const std::vector<NamedSubgroup>& family, int n) {
  CohGroup ambient = cohomology_group(m, n);
  std::vector<std::optional<CohMap>> maps(family.size());
  parallel_for(family.size(), config_.threads,
               [&](std::size_t i) { maps[i] = restriction_map(m, family[i].subgroup, n); });

  AbGroup target;
  IntMatrix stacked(0, ambient.generator_count());
  for (const auto& f : maps) {
    for (const auto& mod : f->target.structure().moduli) target.moduli.push_back(mod);
    stacked = IntMatrix::vstack(stacked, f->matrix());
  }
  AbHom joint{ambient.structure(), target, stacked};
  AbSubgroup kernel = joint.kernel();

  const AbGroup& s = kernel.structure();
  IntVector inv;
  std::size_t free = 0;
  for (const auto& mod : s.moduli) {
    if (sgn(mod) == 0) ++free;
    else inv.push_back(mod);
  }
  check(free == 0 || n == 0, ErrorCode::Internal, "kernel of restrictions is infinite");
  check(free == 0 || inv.empty(), ErrorCode::Internal, "mixed kernel structure in degree 0");

  std::vector<Cochain> reps;
  for (std::size_t j = 0; j < kernel.basis().cols(); ++j) {
    IntVector coords = kernel.basis().column_vector(j);
    check(joint.is_zero() || target.is_zero(joint.apply(coords)), ErrorCode::Internal,
          "kernel generator survives a restriction");
    reps.push_back(ambient.cocycle(coords));
  }
  CohGroup group(n, m, inv, free, std::move(reps),
                 std::make_shared<SubCoordinates>(ambient.coordinate_system(), kernel));
  CohMap inclusion{group, ambient, AbHom{group.structure(), ambient.structure(), kernel.basis()}};
  std::vector<std::string> names;
  for (const auto& f : family) names.push_back(f.name);
  return ShGroup{ambient, group, inclusion, names};
}

ShGroup CohomologyEngine::sha_omega(const GLattice& m, int n) {
  check(n >= 1 && n <= 2, ErrorCode::UnsupportedDegree, "Sh_ω is defined here for degrees 1 and 2");
  return joint_kernel(m, named_cyclic_subgroups(m.group()), n);
}

ShGroup CohomologyEngine::sha_relative(const GLattice& m, const std::vector<NamedSubgroup>& family, int n) {
  check(n >= 1 && n <= 2, ErrorCode::UnsupportedDegree, "Sh is defined here for degrees 1 and 2");
  std::vector<NamedSubgroup> all;
  for (const auto& f : family) {
    check(same_group(f.subgroup.parent(), m.group()), ErrorCode::GroupMismatch,
          "family member " + f.name + " is a subgroup of another group");
    all.push_back(f);
  }
  for (auto& c : named_cyclic_subgroups(m.group())) {
    bool present = false;
    for (const auto& f : all) present = present || f.subgroup == c.subgroup;
    if (!present) all.push_back(std::move(c));
  }
  return joint_kernel(m, all, n);
}

// ------------------------------------------------------------- serialization

std::string serialize(const CohGroup& h) {
  Writer w;
  w.byte('H');
  w.u64(static_cast<std::uint64_t>(h.degree()));
  w.vector(h.invariant_factors());
  w.u64(h.free_rank());
  w.u64(h.representatives().size());
  for (const auto& z : h.representatives()) w.sparse_dense(z);
  if (auto bar = std::dynamic_pointer_cast<const BarCoordinates>(h.coordinate_system())) {
    w.byte('B');
    auto s = bar->presentation().state();
    w.u64(s.generators);
    w.u64(s.eliminations.size());
    for (const auto& e : s.eliminations) {
      w.u64(e.generator);
      w.sparse(e.expression);
    }
    w.u64(s.support.size());
    for (auto x : s.support) w.u64(x);
    w.u64(s.residual_ops.size());
    for (const auto& op : s.residual_ops) {
      w.byte(static_cast<char>(op.kind));
      w.u64(op.i);
      w.u64(op.j);
      w.integer(op.factor);
    }
    w.vector(s.residual_diagonal);
    w.u64(s.torsion_lifts.size());
    for (const auto& l : s.torsion_lifts) w.sparse(l);
  } else if (auto fixed = std::dynamic_pointer_cast<const FixedCoordinates>(h.coordinate_system())) {
    w.byte('F');
    w.matrix(fixed->basis());
  } else {
    fail(ErrorCode::Internal, "only computed cohomology groups can be serialized");
  }
  return w.take();
}

CohGroup deserialize(std::string_view blob, const GLattice& m, int n) {
  Reader r(blob);
  check(r.byte() == 'H', ErrorCode::ParseError, "not a cohomology blob");
  check(r.u64() == static_cast<std::uint64_t>(n), ErrorCode::ParseError, "degree mismatch");
  IntVector inv = r.vector();
  std::size_t free = r.count(m.rank());
  std::size_t nreps = r.count(inv.size() + free);
  check(nreps == inv.size() + free, ErrorCode::ParseError, "representative count mismatch");
  const std::size_t dim = tuple_count(m.group(), n) * m.rank();
  std::vector<Cochain> reps;
  for (std::size_t i = 0; i < nreps; ++i) reps.push_back(r.sparse_dense(dim));
  std::shared_ptr<const CoordinateSystem> coords;
  char kind = r.byte();
  if (kind == 'B') {
    CokernelPresentation::State s;
    s.generators = r.count(dim);
    check(s.generators == dim, ErrorCode::ParseError, "generator count mismatch");
    std::size_t ne = r.count(dim);
    for (std::size_t i = 0; i < ne; ++i) {
      CokernelPresentation::Elimination e;
      e.generator = r.count(dim - 1);
      e.expression = r.sparse(dim);
      s.eliminations.push_back(std::move(e));
    }
    std::size_t ns = r.count(dim);
    for (std::size_t i = 0; i < ns; ++i) s.support.push_back(r.count(dim - 1));
    std::size_t nops = r.count(r.remaining());
    for (std::size_t i = 0; i < nops; ++i) {
      CokernelPresentation::RowOp op;
      op.kind = static_cast<CokernelPresentation::RowOp::Kind>(r.byte());
      op.i = r.count(ns);
      op.j = r.count(ns);
      op.factor = r.integer();
      s.residual_ops.push_back(std::move(op));
    }
    s.residual_diagonal = r.vector();
    std::size_t nl = r.count(dim);
    for (std::size_t i = 0; i < nl; ++i) s.torsion_lifts.push_back(r.sparse(dim));
    try {
      coords = std::make_shared<BarCoordinates>(CokernelPresentation::from_state(std::move(s)));
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, e.what());
    }
  } else if (kind == 'F') {
    IntMatrix basis = r.matrix();
    check(basis.rows() == m.rank(), ErrorCode::ParseError, "fixed basis shape mismatch");
    coords = std::make_shared<FixedCoordinates>(std::move(basis));
  } else {
    fail(ErrorCode::ParseError, "unknown coordinate kind");
  }
  check(r.done(), ErrorCode::ParseError, "trailing bytes in blob");
  CohGroup h = [&] {
    try {
      return CohGroup(n, m, std::move(inv), free, std::move(reps), coords);
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, e.what());
    }
  }();
  // Never trust stored data blindly: generators must map to unit vectors.
  AbGroup s = h.structure();
  for (std::size_t j = 0; j < h.generator_count(); ++j) {
    auto c = h.try_coordinates(h.representatives()[j]);
    check(c.has_value() && c->size() == h.generator_count(), ErrorCode::ParseError, "stored generator invalid");
    IntVector e(h.generator_count());
    e[j] = 1;
    check(s.is_zero([&] {
            IntVector d = *c;
            for (std::size_t i = 0; i < d.size(); ++i) d[i] -= e[i];
            return d;
          }()),
          ErrorCode::ParseError, "stored generator does not have unit coordinates");
  }
  return h;
}

// ------------------------------------------------------------- defaults

namespace {
CohomologyEngine& default_engine() {
  static CohomologyEngine engine;
  return engine;
}
}  // namespace

CohGroup cohomology_group(const GLattice& m, int n) { return default_engine().cohomology_group(m, n); }
CohMap restriction_map(const GLattice& m, const Subgroup& h, int n) {
  return default_engine().restriction_map(m, h, n);
}
CohMap induced_map(const LatticeMorphism& f, int n) { return default_engine().induced_map(f, n); }
CohMap connecting_map(const LatticeSES& ses, int n) { return default_engine().connecting_map(ses, n); }
ShGroup sha_omega(const GLattice& m, int n) { return default_engine().sha_omega(m, n); }
ShGroup sha_relative(const GLattice& m, const std::vector<NamedSubgroup>& family, int n) {
  return default_engine().sha_relative(m, family, n);
}

}  // namespace shacalc
