#include "shacalc/lattice.hpp"

#include <algorithm>

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || a->table() == b->table(); }

std::string make_fingerprint(const FiniteGroup& g, std::size_t rank, const std::vector<IntMatrix>& action) {
  std::string out;
  out.reserve(g.table().size() * 2 + action.size() * rank * rank * 2 + 16);
  out += "G" + std::to_string(g.order()) + ":";
  for (std::uint16_t v : g.table()) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8));
  }
  out += "|M" + std::to_string(rank) + ":";
  for (const auto& a : action) {
    for (std::size_t r = 0; r < rank; ++r)
      for (std::size_t c = 0; c < rank; ++c) {
        out += a(r, c).get_str(16);
        out.push_back(',');
      }
  }
  return out;
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

IntVector ones(std::size_t n) { return IntVector(n, Int(1)); }

// Joint kernel of (rho(g) - I) over the given elements.
IntMatrix fixed_basis_for(const GLattice& m, const std::vector<Element>& elems) {
  const std::size_t r = m.rank();
  if (elems.empty() || m.is_trivial_action()) return IntMatrix::identity(r);
  IntMatrix stacked(r * elems.size(), r);
  for (std::size_t k = 0; k < elems.size(); ++k) {
    const IntMatrix& a = m.action(elems[k]);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) stacked(k * r + i, j) = a(i, j) - (i == j ? 1 : 0);
  }
  return integer_kernel(stacked);
}

}  // namespace

GLattice::GLattice(GroupPtr group, std::vector<IntMatrix> action, std::vector<std::string> labels) {
  auto d = std::make_shared<Data>();
  d->group = std::move(group);
  const FiniteGroup& g = *d->group;
  check(action.size() == g.order(), ErrorCode::Internal, "lattice needs one matrix per group element");
  d->rank = action.front().rows();
  for (const auto& a : action)
    check(a.rows() == d->rank && a.cols() == d->rank, ErrorCode::Internal, "action matrix has the wrong shape");
  check(action[0].is_identity() || d->rank == 0, ErrorCode::NotEquivariant, "identity must act trivially");
  // Checking g*s for every element g and generator s covers all products,
  // since every element is a word in the generators.
  for (Element s : g.generators()) {
    if (d->rank > 0) {
      Int det = determinant(action[s]);
      check(det == 1 || det == -1, ErrorCode::NotEquivariant, "action matrix is not unimodular");
    }
    for (Element x = 0; x < g.order(); ++x)
      check(action[g.mul(x, s)] == action[x] * action[s], ErrorCode::NotEquivariant,
            "action is not a homomorphism");
  }
  if (labels.empty())
    for (std::size_t i = 0; i < d->rank; ++i) labels.push_back("b" + std::to_string(i));
  check(labels.size() == d->rank, ErrorCode::Internal, "one label per basis vector");
  d->labels = std::move(labels);
  d->trivial = std::all_of(action.begin(), action.end(), [&](const IntMatrix& a) { return d->rank == 0 || a.is_identity(); });
  d->fingerprint = make_fingerprint(g, d->rank, action);
  d->action = std::move(action);
  data_ = std::move(d);
}

bool LatticeMorphism::is_equivariant() const {
  if (!same_group(source.group(), target.group())) return false;
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank()) return false;
  if (matrix.empty()) return true;
  for (Element g = 0; g < source.group()->order(); ++g)
    if (matrix * source.action(g) != target.action(g) * matrix) return false;
  return true;
}

bool LatticeSES::verify() const {
  const std::size_t a = sub.source.rank(), b = sub.target.rank(), c = quot.target.rank();
  if (!(sub.target == quot.source) || a + c != b) return false;
  if (!sub.is_equivariant() || !quot.is_equivariant()) return false;
  if (b > 0 && !(quot.matrix * sub.matrix).is_zero()) return false;
  if (a > 0 && !(retraction * sub.matrix).is_identity()) return false;
  if (c > 0 && !(quot.matrix * section).is_identity()) return false;
  // Saturated image of rank a inside ker(quot), which has rank b - c = a:
  // the two coincide.
  auto inv = integer_left_inverse(sub.matrix);
  return inv.has_value();
}

GLattice trivial_lattice(const GroupPtr& g, std::size_t rank) {
  std::vector<IntMatrix> action(g->order(), IntMatrix::identity(rank));
  return GLattice(g, std::move(action), {});
}

GLattice permutation_lattice(const Subgroup& h) {
  const auto& g = h.parent();
  CosetTable t = left_cosets(h);
  const std::size_t n = t.cosets.size();
  std::vector<IntMatrix> action;
  action.reserve(g->order());
  for (Element x = 0; x < g->order(); ++x) {
    IntMatrix m(n, n);
    for (std::size_t c = 0; c < n; ++c) m(t.coset_of[g->mul(x, t.cosets[c].front())], c) = 1;
    action.push_back(std::move(m));
  }
  std::vector<std::string> labels;
  for (const auto& c : t.cosets) labels.push_back(g->element_name(c.front()) + "H");
  return GLattice(g, std::move(action), std::move(labels));
}

GLattice direct_sum(const std::vector<GLattice>& parts) {
  check(!parts.empty(), ErrorCode::GroupMismatch, "direct sum of no lattices");
  const GroupPtr& g = parts.front().group();
  std::size_t total = 0;
  for (const auto& p : parts) {
    check(same_group(p.group(), g), ErrorCode::GroupMismatch, "direct sum over different groups");
    total += p.rank();
  }
  if (parts.size() == 1) return parts.front();
  std::vector<IntMatrix> action(g->order(), IntMatrix(total, total));
  std::vector<std::string> labels;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    for (Element x = 0; x < g->order(); ++x)
      for (std::size_t i = 0; i < p.rank(); ++i)
        for (std::size_t j = 0; j < p.rank(); ++j) action[x](offset + i, offset + j) = p.action(x)(i, j);
    for (const auto& l : p.labels()) labels.push_back(std::to_string(k + 1) + ":" + l);
    offset += p.rank();
  }
  return GLattice(g, std::move(action), std::move(labels));
}

LatticeMorphism diagonal_norm_embedding(const GroupPtr& g, const std::vector<Subgroup>& subgroups) {
  check(!subgroups.empty(), ErrorCode::Internal, "diagonal embedding needs at least one subgroup");
  std::vector<GLattice> parts;
  for (const auto& h : subgroups) {
    check(same_group(h.parent(), g), ErrorCode::GroupMismatch, "subgroup of a different group");
    parts.push_back(permutation_lattice(h));
  }
  GLattice target = direct_sum(parts);
  return LatticeMorphism{trivial_lattice(g, 1), target, IntMatrix::column(ones(target.rank()))};
}

QuotientLattice quotient_lattice(const GLattice& m, const LatticeMorphism& sub) {
  check(sub.target == m, ErrorCode::GroupMismatch, "sublattice morphism does not land in the lattice");
  check(sub.is_equivariant(), ErrorCode::NotEquivariant, "sublattice morphism is not equivariant");
  const std::size_t n = m.rank(), k = sub.source.rank();
  IntMatrix proj, section, retraction;
  if (k == 0) {
    proj = IntMatrix::identity(n);
    section = IntMatrix::identity(n);
    retraction = IntMatrix(0, n);
  } else {
    SmithForm f = smith_normal_form(sub.matrix, {.left = true, .left_inv = true, .right = true});
    check(f.rank == k, ErrorCode::NotInjective, "sublattice morphism is not injective");
    for (const auto& d : f.diagonal)
      check(d == 1, ErrorCode::NotSaturated, "quotient would have torsion (invariant factor " + d.get_str() + ")");
    const auto low = range(k, n), high = range(0, k);
    proj = f.U.select_rows(low);
    section = f.U_inv.select_columns(low);
    retraction = f.V * f.U.select_rows(high);
  }
  const std::size_t q = n - k;
  std::vector<IntMatrix> action;
  action.reserve(m.group()->order());
  for (Element x = 0; x < m.group()->order(); ++x)
    action.push_back(q == 0 ? IntMatrix(0, 0) : proj * m.action(x) * section);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < q; ++i) labels.push_back("t" + std::to_string(i));
  GLattice quotient(m.group(), std::move(action), std::move(labels));
  LatticeMorphism projection{m, quotient, proj};
  check(projection.is_equivariant(), ErrorCode::Internal, "quotient projection not equivariant");
  LatticeSES ses{sub, projection, retraction, section};
  return QuotientLattice{quotient, projection, ses};
}

CharacterLattice multinorm_character_lattice(const GroupPtr& g, const std::vector<Subgroup>& subgroups) {
  LatticeMorphism emb = diagonal_norm_embedding(g, subgroups);
  QuotientLattice q = quotient_lattice(emb.target, emb);
  return CharacterLattice{q.lattice, q.ses};
}

CharacterLattice normone_character_lattice(const Subgroup& k) {
  return multinorm_character_lattice(k.parent(), {k});
}

LatticeMorphism norm_character_map(const Subgroup& k, const Subgroup& h) {
  check(same_group(k.parent(), h.parent()), ErrorCode::GroupMismatch, "subgroups of different groups");
  check(h.is_subgroup_of(k), ErrorCode::NotNested, "H is not contained in K");
  CosetTable kc = left_cosets(k), hc = left_cosets(h);
  IntMatrix m(hc.cosets.size(), kc.cosets.size());
  for (std::size_t j = 0; j < hc.cosets.size(); ++j) m(j, kc.coset_of[hc.cosets[j].front()]) = 1;
  LatticeMorphism out{permutation_lattice(k), permutation_lattice(h), m};
  check(out.is_equivariant(), ErrorCode::Internal, "norm map not equivariant");
  return out;
}

LatticeMorphism s_to_t_morphism(const GroupPtr& g, const std::vector<Subgroup>& subgroups, const Subgroup& k,
                                std::vector<std::string>* warnings) {
  check(!subgroups.empty(), ErrorCode::Internal, "no field subgroups");
  IntMatrix n(0, k.index());
  Subgroup join = subgroups.front();
  for (const auto& h : subgroups) {
    n = IntMatrix::vstack(n, norm_character_map(k, h).matrix);
    join = subgroup_join(join, h);
  }
  if (warnings && !(join == k)) warnings->push_back("K is not the join of the field subgroups");

  CharacterLattice s = normone_character_lattice(k);
  CharacterLattice t = multinorm_character_lattice(g, subgroups);
  check(n * ones(k.index()) == ones(n.rows()), ErrorCode::DescentFailure, "norm map does not preserve ε");
  IntMatrix f = t.ses.quot.matrix * n * s.ses.section;
  if (s.lattice.rank() > 0)
    check(t.ses.quot.matrix * n == f * s.ses.quot.matrix, ErrorCode::DescentFailure,
          "norm map does not descend to the quotients");
  LatticeMorphism out{s.lattice, t.lattice, f};
  check(out.is_equivariant(), ErrorCode::Internal, "S -> T morphism not equivariant");
  check(s.lattice.rank() == 0 || rank(f) == s.lattice.rank(), ErrorCode::NotInjective,
        "S -> T morphism is not injective");
  return out;
}

GLattice restrict_lattice(const GLattice& m, const Subgroup& h) {
  check(same_group(m.group(), h.parent()), ErrorCode::GroupMismatch, "restriction to a subgroup of another group");
  std::vector<IntMatrix> action;
  action.reserve(h.order());
  for (Element x : h.members()) action.push_back(m.action(x));
  return GLattice(subgroup_as_group(h), std::move(action), m.labels());
}

IntMatrix fixed_basis(const GLattice& m, const Subgroup& h) {
  check(same_group(m.group(), h.parent()), ErrorCode::GroupMismatch, "fixed points under a subgroup of another group");
  return fixed_basis_for(m, generating_set(h));
}

LatticeMorphism fixed_sublattice(const GLattice& m, const Subgroup& h) {
  IntMatrix basis = fixed_basis(m, h);
  const std::size_t f = basis.cols();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < f; ++i) labels.push_back("f" + std::to_string(i));
  if (!is_normal(h)) {
    GLattice target = restrict_lattice(m, h);
    return LatticeMorphism{trivial_lattice(target.group(), f), target, basis};
  }
  auto left = integer_left_inverse(basis);
  check(left.has_value(), ErrorCode::Internal, "fixed sublattice is not saturated");
  std::vector<IntMatrix> action;
  for (Element x = 0; x < m.group()->order(); ++x)
    action.push_back(f == 0 ? IntMatrix(0, 0) : *left * m.action(x) * basis);
  LatticeMorphism out{GLattice(m.group(), std::move(action), labels), m, basis};
  check(out.is_equivariant(), ErrorCode::Internal, "fixed sublattice inclusion not equivariant");
  return out;
}

FixedQuotientLattice fixed_quotient_lattice(const GLattice& m, const QuotientGroup& q) {
  IntMatrix basis = fixed_basis(m, q.kernel);
  const std::size_t f = basis.cols();
  auto left = integer_left_inverse(basis);
  check(left.has_value(), ErrorCode::Internal, "fixed sublattice is not saturated");
  std::vector<IntMatrix> action;
  for (Element c = 0; c < q.quotient->order(); ++c)
    action.push_back(f == 0 ? IntMatrix(0, 0) : *left * m.action(q.section[c]) * basis);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < f; ++i) labels.push_back("f" + std::to_string(i));
  return FixedQuotientLattice{GLattice(q.quotient, std::move(action), std::move(labels)), basis};
}

}  // namespace shacalc
