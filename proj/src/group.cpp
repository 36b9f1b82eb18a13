#include "shacalc/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
  return c;
}

Permutation identity_permutation(std::size_t degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

void check_bijection(std::size_t degree, const Permutation& p) {
  check(p.size() == degree, ErrorCode::NonBijective,
        "permutation has " + std::to_string(p.size()) + " images, expected " + std::to_string(degree));
  std::vector<bool> seen(degree, false);
  for (std::size_t x : p) {
    check(x < degree, ErrorCode::NonBijective, "image " + std::to_string(x) + " outside the domain");
    check(!seen[x], ErrorCode::NonBijective, "image " + std::to_string(x) + " repeated");
    seen[x] = true;
  }
}

std::vector<Element> closure_members(const FiniteGroup& g, const std::vector<Element>& seed) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> members{0};
  in[0] = true;
  std::vector<Element> gens;
  for (Element s : seed) {
    check(s < g.order(), ErrorCode::BadIndex, "element index " + std::to_string(s) + " out of range");
    if (s != 0) gens.push_back(s);
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Element s : gens) {
      Element p = g.mul(members[i], s);
      if (!in[p]) {
        in[p] = true;
        members.push_back(p);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

FiniteGroup::FiniteGroup(std::size_t degree, std::vector<Permutation> perm_images, std::vector<Element> generators)
    : order_(perm_images.size()), degree_(degree), perm_images_(std::move(perm_images)), generators_(std::move(generators)) {
  check(order_ > 0, ErrorCode::Internal, "empty group");
  check(order_ <= 65535, ErrorCode::OrderBound, "group too large for the table representation");
  check(perm_images_[0] == identity_permutation(degree), ErrorCode::Internal, "element 0 must be the identity");
  std::map<Permutation, Element> index;
  for (Element i = 0; i < order_; ++i) index.emplace(perm_images_[i], i);
  check(index.size() == order_, ErrorCode::Internal, "duplicate group elements");
  mul_.resize(order_ * order_);
  for (Element a = 0; a < order_; ++a) {
    for (Element b = 0; b < order_; ++b) {
      auto it = index.find(compose(perm_images_[a], perm_images_[b]));
      check(it != index.end(), ErrorCode::Internal, "element set not closed under composition");
      mul_[a * order_ + b] = static_cast<std::uint16_t>(it->second);
    }
  }
  inv_.resize(order_);
  for (Element a = 0; a < order_; ++a) {
    for (Element b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
    }
  }
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t n = 1;
  for (Element x = a; x != 0; x = mul(x, a)) ++n;
  return n;
}

std::string FiniteGroup::element_name(Element a) const {
  const Permutation& p = perm_images_[a];
  std::vector<bool> seen(p.size(), false);
  std::string out;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == s) continue;
    out += '(';
    std::size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x);
      first = false;
      x = p[x];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::verify_axioms() const {
  for (Element a = 0; a < order_; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) return false;
    if (mul(a, inv(a)) != 0 || mul(inv(a), a) != 0) return false;
  }
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b) {
      const Element ab = mul(a, b);
      for (Element c = 0; c < order_; ++c)
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
    }
  return true;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> members)
    : parent_(std::move(parent)), members_(std::move(members)), mask_(parent_->order(), false) {
  check(std::is_sorted(members_.begin(), members_.end()) &&
            std::adjacent_find(members_.begin(), members_.end()) == members_.end(),
        ErrorCode::Internal, "subgroup members must be strictly increasing");
  check(!members_.empty() && members_.front() == 0, ErrorCode::Internal, "subgroup must contain the identity");
  for (Element m : members_) {
    check(m < parent_->order(), ErrorCode::BadIndex, "subgroup member out of range");
    mask_[m] = true;
  }
  for (Element a : members_) {
    check(mask_[parent_->inv(a)], ErrorCode::Internal, "subgroup not closed under inverses");
    for (Element b : members_) check(mask_[parent_->mul(a, b)], ErrorCode::Internal, "subgroup not closed");
  }
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (parent_ != other.parent_ && parent_->table() != other.parent_->table()) return false;
  return std::all_of(members_.begin(), members_.end(), [&](Element g) { return other.contains(g); });
}

std::size_t Subgroup::local_index(Element g) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), g);
  check(it != members_.end() && *it == g, ErrorCode::BadIndex, "element not in subgroup");
  return static_cast<std::size_t>(it - members_.begin());
}

std::string Subgroup::description() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ", ";
    s += parent_->element_name(members_[i]);
  }
  return s + "}";
}

Permutation permutation_from_cycles(std::size_t degree, const std::vector<std::vector<std::size_t>>& cycles) {
  Permutation p = identity_permutation(degree);
  std::vector<bool> touched(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const std::size_t x = cycle[i];
      check(x < degree, ErrorCode::NonBijective, "cycle point " + std::to_string(x) + " outside the domain");
      check(!touched[x], ErrorCode::NonBijective, "cycle point " + std::to_string(x) + " repeated");
      touched[x] = true;
      p[x] = cycle[(i + 1) % cycle.size()];
    }
  }
  return p;
}

GroupPtr group_from_permutations(std::size_t degree, const std::vector<Permutation>& generators,
                                 std::size_t order_bound) {
  check(degree > 0, ErrorCode::NonBijective, "permutation degree must be positive");
  for (const auto& g : generators) check_bijection(degree, g);

  std::set<Permutation> seen{identity_permutation(degree)};
  std::vector<Permutation> frontier{identity_permutation(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (const auto& s : generators) {
        Permutation y = compose(x, s);
        if (seen.insert(y).second) {
          check(seen.size() <= order_bound, ErrorCode::OrderBound,
                "group order exceeds the bound " + std::to_string(order_bound));
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Permutation> elements(seen.begin(), seen.end());  // lexicographic, identity first
  std::vector<Element> gens;
  for (const auto& s : generators) {
    auto it = std::lower_bound(elements.begin(), elements.end(), s);
    gens.push_back(static_cast<Element>(it - elements.begin()));
  }
  return std::make_shared<const FiniteGroup>(degree, std::move(elements), std::move(gens));
}

Element element_of(const FiniteGroup& g, const Permutation& p) {
  check(p.size() == g.degree(), ErrorCode::BadIndex, "permutation degree does not match the group");
  for (Element i = 0; i < g.order(); ++i)
    if (g.permutation(i) == p) return i;
  fail(ErrorCode::BadIndex, "permutation is not an element of the group");
}

Subgroup whole_group(const GroupPtr& g) {
  std::vector<Element> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}); }

Subgroup subgroup_closure(const GroupPtr& g, const std::vector<Element>& seed) {
  return Subgroup(g, closure_members(*g, seed));
}

std::vector<Subgroup> cyclic_subgroups(const GroupPtr& g) {
  std::set<std::vector<Element>> found;
  for (Element x = 0; x < g->order(); ++x) found.insert(closure_members(*g, {x}));
  std::vector<std::vector<Element>> sorted(found.begin(), found.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Subgroup> out;
  for (auto& m : sorted) out.emplace_back(g, std::move(m));
  return out;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  std::vector<Subgroup> cyclic = cyclic_subgroups(g);
  std::set<std::vector<Element>> found;
  std::vector<std::vector<Element>> queue;
  for (const auto& c : cyclic)
    if (found.insert(c.members()).second) queue.push_back(c.members());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::vector<Element> current = queue[i];
    std::vector<bool> mask(g->order(), false);
    for (Element m : current) mask[m] = true;
    for (const auto& c : cyclic) {
      if (std::all_of(c.members().begin(), c.members().end(), [&](Element m) { return mask[m]; })) continue;
      std::vector<Element> seed = current;
      seed.insert(seed.end(), c.members().begin(), c.members().end());
      auto joined = closure_members(*g, seed);
      if (found.insert(joined).second) queue.push_back(std::move(joined));
    }
  }
  std::vector<std::vector<Element>> sorted(found.begin(), found.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Subgroup> out;
  for (auto& m : sorted) out.emplace_back(g, std::move(m));
  return out;
}

Subgroup normal_core_in(const Subgroup& ambient, const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<Element> core;
  for (Element x : h.members()) {
    bool everywhere = true;
    // x lies in every conjugate y h y^-1 iff y^-1 x y lies in h for every y.
    for (Element y : ambient.members()) {
      if (!h.contains(g->conj(g->inv(y), x))) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) core.push_back(x);
  }
  return Subgroup(g, std::move(core));
}

Subgroup normal_core(const Subgroup& h) { return normal_core_in(whole_group(h.parent()), h); }

bool is_normal(const Subgroup& h) {
  const auto& g = h.parent();
  for (Element y = 0; y < g->order(); ++y)
    for (Element x : h.members())
      if (!h.contains(g->conj(y, x))) return false;
  return true;
}

Subgroup subgroup_join(const Subgroup& a, const Subgroup& b) {
  check(a.parent() == b.parent(), ErrorCode::ParentMismatch, "join of subgroups of different groups");
  std::vector<Element> seed = a.members();
  seed.insert(seed.end(), b.members().begin(), b.members().end());
  return subgroup_closure(a.parent(), seed);
}

Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b) {
  check(a.parent() == b.parent(), ErrorCode::ParentMismatch, "intersection of subgroups of different groups");
  std::vector<Element> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                        std::back_inserter(out));
  return Subgroup(a.parent(), std::move(out));
}

Subgroup normalizer(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<Element> out;
  for (Element y = 0; y < g->order(); ++y) {
    bool stable = std::all_of(h.members().begin(), h.members().end(),
                              [&](Element x) { return h.contains(g->conj(y, x)); });
    if (stable) out.push_back(y);
  }
  return Subgroup(g, std::move(out));
}

Subgroup derived_subgroup(const GroupPtr& g) {
  std::vector<Element> commutators;
  for (Element a = 0; a < g->order(); ++a)
    for (Element b = 0; b < g->order(); ++b)
      commutators.push_back(g->mul(g->mul(a, b), g->mul(g->inv(a), g->inv(b))));
  std::sort(commutators.begin(), commutators.end());
  commutators.erase(std::unique(commutators.begin(), commutators.end()), commutators.end());
  return subgroup_closure(g, commutators);
}

Subgroup center(const GroupPtr& g) {
  std::vector<Element> out;
  for (Element a = 0; a < g->order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g->order() && central; ++b) central = g->mul(a, b) == g->mul(b, a);
    if (central) out.push_back(a);
  }
  return Subgroup(g, std::move(out));
}

CosetTable left_cosets(const Subgroup& h) {
  const auto& g = h.parent();
  CosetTable t;
  t.coset_of.assign(g->order(), g->order());
  for (Element x = 0; x < g->order(); ++x) {
    if (t.coset_of[x] != g->order()) continue;
    std::vector<Element> coset;
    for (Element m : h.members()) coset.push_back(g->mul(x, m));
    std::sort(coset.begin(), coset.end());
    for (Element y : coset) t.coset_of[y] = t.cosets.size();
    t.cosets.push_back(std::move(coset));
  }
  return t;
}

QuotientGroup quotient_group(const Subgroup& n) {
  check(is_normal(n), ErrorCode::NotNormal, "quotient by a non-normal subgroup " + n.description());
  const auto& g = n.parent();
  CosetTable cosets = left_cosets(n);
  const std::size_t q = cosets.cosets.size();
  std::vector<Element> section(q);
  for (std::size_t c = 0; c < q; ++c) section[c] = cosets.cosets[c].front();

  std::vector<Permutation> images(q, Permutation(q));
  for (std::size_t c = 0; c < q; ++c)
    for (std::size_t d = 0; d < q; ++d) images[c][d] = cosets.coset_of[g->mul(section[c], section[d])];

  std::vector<Element> gens;
  for (Element s : g->generators()) {
    Element c = cosets.coset_of[s];
    if (c != 0 && std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
  }
  QuotientGroup out{g, n, std::make_shared<const FiniteGroup>(q, std::move(images), std::move(gens)),
                    cosets.coset_of, std::move(section)};
  return out;
}

std::vector<Element> generating_set(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<Element> gens;
  std::vector<Element> reached{0};
  for (Element m : h.members()) {
    if (std::binary_search(reached.begin(), reached.end(), m)) continue;
    gens.push_back(m);
    reached = closure_members(*g, gens);
  }
  return gens;
}

GroupPtr subgroup_as_group(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<Permutation> perms;
  perms.reserve(h.order());
  for (Element m : h.members()) perms.push_back(g->permutation(m));
  std::vector<Element> gens;
  for (Element m : generating_set(h)) gens.push_back(h.local_index(m));
  return std::make_shared<const FiniteGroup>(g->degree(), std::move(perms), std::move(gens));
}

}  // namespace shacalc
