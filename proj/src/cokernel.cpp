#include "shacalc/cokernel.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

// rel += factor * pivot_rel; newly created indices are appended to `created`.
void eliminate_into(SparseVector& rel, const Int& factor, const SparseVector& pivot_rel,
                    std::vector<std::size_t>& created) {
  SparseVector out;
  out.reserve(rel.size() + pivot_rel.size());
  std::size_t i = 0, j = 0;
  while (i < rel.size() || j < pivot_rel.size()) {
    if (j == pivot_rel.size() || (i < rel.size() && rel[i].index < pivot_rel[j].index)) {
      out.push_back(std::move(rel[i++]));
    } else if (i == rel.size() || pivot_rel[j].index < rel[i].index) {
      out.push_back({pivot_rel[j].index, factor * pivot_rel[j].value});
      created.push_back(pivot_rel[j].index);
      ++j;
    } else {
      Int v = rel[i].value + factor * pivot_rel[j].value;
      if (sgn(v) != 0) out.push_back({rel[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  rel = std::move(out);
}

}  // namespace

CokernelPresentation CokernelPresentation::build(std::size_t generators, std::vector<SparseVector> relations) {
  CokernelPresentation p;
  p.generators_ = generators;

  const std::size_t nrel = relations.size();
  std::vector<bool> alive(nrel, true);
  std::vector<std::vector<std::size_t>> occurrences(generators);
  for (std::size_t r = 0; r < nrel; ++r) {
    if (relations[r].empty()) alive[r] = false;
    for (const auto& e : relations[r]) {
      check(e.index < generators, ErrorCode::Internal, "relation refers to unknown generator");
      occurrences[e.index].push_back(r);
    }
  }

  std::vector<std::size_t> order(nrel);
  std::vector<std::size_t> created;
  bool progress = true;
  while (progress) {
    progress = false;
    order.clear();
    for (std::size_t r = 0; r < nrel; ++r)
      if (alive[r]) order.push_back(r);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return relations[a].size() < relations[b].size(); });
    for (std::size_t r : order) {
      if (!alive[r]) continue;
      SparseVector& rel = relations[r];
      if (rel.empty()) {
        alive[r] = false;
        continue;
      }
      // Unit pivot touching the fewest other relations.
      std::size_t best = rel.size();
      for (std::size_t k = 0; k < rel.size(); ++k) {
        if (cmpabs(rel[k].value, 1) != 0) continue;
        if (best == rel.size() || occurrences[rel[k].index].size() < occurrences[rel[best].index].size()) best = k;
      }
      if (best == rel.size()) continue;

      const std::size_t gen = rel[best].index;
      const Int unit = rel[best].value;
      SparseVector pivot_rel = std::move(rel);
      rel.clear();
      alive[r] = false;

      for (std::size_t other : occurrences[gen]) {
        if (other == r || !alive[other]) continue;
        Int c = sparse_coefficient(relations[other], gen);
        if (sgn(c) == 0) continue;
        created.clear();
        eliminate_into(relations[other], -c * unit, pivot_rel, created);
        for (std::size_t g : created) occurrences[g].push_back(other);
        if (relations[other].empty()) alive[other] = false;
      }
      occurrences[gen].clear();

      // e_gen = -unit * sum_{k != gen} rel_k e_k
      Elimination elim{gen, {}};
      elim.expression.reserve(pivot_rel.size() - 1);
      for (auto& e : pivot_rel)
        if (e.index != gen) elim.expression.push_back({e.index, -unit * e.value});
      p.eliminations_.push_back(std::move(elim));
      progress = true;
    }
    // Compact occurrence lists so the pivot heuristic stays meaningful.
    if (progress) {
      for (auto& occ : occurrences) {
        std::sort(occ.begin(), occ.end());
        occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
        std::erase_if(occ, [&](std::size_t r) { return !alive[r]; });
      }
    }
  }

  std::vector<SparseVector> residual;
  for (std::size_t r = 0; r < nrel; ++r)
    if (alive[r] && !relations[r].empty()) residual.push_back(std::move(relations[r]));
  p.finish_residual(residual);
  return p;
}

void CokernelPresentation::finish_residual(const std::vector<SparseVector>& residual) {
  std::vector<std::size_t> support;
  for (const auto& rel : residual)
    for (const auto& e : rel) support.push_back(e.index);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  support_ = support;

  std::unordered_map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < support.size(); ++i) local.emplace(support[i], i);

  const std::size_t rows = support.size(), cols = residual.size();
  std::vector<IntVector> a(cols, IntVector(rows));  // column-major
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& e : residual[c]) a[c][local.at(e.index)] = e.value;

  residual_ops_.clear();
  residual_diagonal_.clear();
  auto record = [&](RowOp op) {
    for (std::size_t c = 0; c < cols; ++c) apply(op, a[c]);
    residual_ops_.push_back(std::move(op));
  };

  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    for (;;) {
      // Smallest nonzero entry of the remaining block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t c = t; c < cols; ++c)
        for (std::size_t r = t; r < rows; ++r)
          if (sgn(a[c][r]) != 0 && (pr == rows || cmpabs(a[c][r], a[pc][pr]) < 0)) {
            pr = r;
            pc = c;
          }
      if (pr == rows) break;
      if (pc != t) std::swap(a[pc], a[t]);
      if (pr != t) record({RowOp::Swap, t, pr, 0});
      bool clean = true;
      const Int p = a[t][t];
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (sgn(a[t][r]) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][r].get_mpz_t(), p.get_mpz_t());
        record({RowOp::AddMultiple, r, t, -q});
        if (sgn(a[t][r]) != 0) clean = false;
      }
      // Column moves only touch the relations, which need no record.
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (sgn(a[c][t]) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[c][t].get_mpz_t(), p.get_mpz_t());
        for (std::size_t r = t; r < rows; ++r)
          if (sgn(a[t][r]) != 0) a[c][r] -= q * a[t][r];
        if (sgn(a[c][t]) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: pull an offending row into the pivot row and go again.
      std::size_t bad = rows;
      for (std::size_t c = t + 1; c < cols && bad == rows; ++c)
        for (std::size_t r = t + 1; r < rows; ++r)
          if (sgn(a[c][r]) != 0 && !mpz_divisible_p(a[c][r].get_mpz_t(), p.get_mpz_t())) {
            bad = r;
            break;
          }
      if (bad == rows) break;
      record({RowOp::AddMultiple, t, bad, 1});
    }
    if (sgn(a[t][t]) == 0) break;
    if (sgn(a[t][t]) < 0) record({RowOp::Negate, t, t, 0});
    residual_diagonal_.push_back(a[t][t]);
  }
  residual_rank_ = residual_diagonal_.size();

  torsion_.clear();
  torsion_rows_.clear();
  torsion_lifts_.clear();
  for (std::size_t i = 0; i < residual_rank_; ++i) {
    if (residual_diagonal_[i] == 1) continue;
    torsion_.push_back(residual_diagonal_[i]);
    torsion_rows_.push_back(i);
    // Column i of U^{-1}: undo the moves in reverse order on e_i.
    IntVector e(rows);
    e[i] = 1;
    for (auto it = residual_ops_.rbegin(); it != residual_ops_.rend(); ++it) {
      RowOp inv = *it;
      if (inv.kind == RowOp::AddMultiple) inv.factor = -inv.factor;
      apply(inv, e);
    }
    SparseVector lift;
    for (std::size_t s = 0; s < rows; ++s)
      if (sgn(e[s]) != 0) lift.push_back({support[s], e[s]});
    torsion_lifts_.push_back(std::move(lift));
  }
}

void CokernelPresentation::apply(const RowOp& op, IntVector& v) {
  switch (op.kind) {
    case RowOp::Swap:
      std::swap(v[op.i], v[op.j]);
      break;
    case RowOp::AddMultiple:
      if (sgn(v[op.j]) != 0) v[op.i] += op.factor * v[op.j];
      break;
    case RowOp::Negate:
      v[op.i] = -v[op.i];
      break;
  }
}

IntVector CokernelPresentation::torsion_generator(std::size_t j) const {
  IntVector v(generators_);
  for (const auto& e : torsion_lifts_.at(j)) v[e.index] = e.value;
  return v;
}

std::optional<IntVector> CokernelPresentation::torsion_coordinates(const IntVector& input) const {
  check(input.size() == generators_, ErrorCode::Internal, "cokernel coordinates: size mismatch");
  IntVector x = input;
  for (const auto& elim : eliminations_) {
    Int c = x[elim.generator];
    if (sgn(c) == 0) continue;
    x[elim.generator] = 0;
    for (const auto& e : elim.expression) x[e.index] += c * e.value;
  }
  const std::size_t s = support_.size();
  IntVector y(s);
  for (std::size_t i = 0; i < s; ++i) {
    y[i] = x[support_[i]];
    x[support_[i]] = 0;
  }
  // Anything left outside the residual support is a free generator.
  for (const auto& v : x)
    if (sgn(v) != 0) return std::nullopt;
  for (const auto& op : residual_ops_) apply(op, y);
  const IntVector& u = y;
  for (std::size_t i = residual_rank_; i < s; ++i)
    if (sgn(u[i]) != 0) return std::nullopt;
  IntVector coords(torsion_.size());
  for (std::size_t j = 0; j < torsion_.size(); ++j) coords[j] = reduce_mod(u[torsion_rows_[j]], torsion_[j]);
  return coords;
}

CokernelPresentation::State CokernelPresentation::state() const {
  return State{generators_, eliminations_, support_, residual_ops_, residual_diagonal_, torsion_lifts_};
}

CokernelPresentation CokernelPresentation::from_state(State s) {
  CokernelPresentation p;
  p.generators_ = s.generators;
  p.eliminations_ = std::move(s.eliminations);
  p.support_ = std::move(s.support);
  p.residual_ops_ = std::move(s.residual_ops);
  p.residual_diagonal_ = std::move(s.residual_diagonal);
  p.residual_rank_ = p.residual_diagonal_.size();
  for (const auto& op : p.residual_ops_)
    check(op.kind <= RowOp::Negate && op.i < p.support_.size() && op.j < p.support_.size(), ErrorCode::Internal,
          "cokernel state: residual move out of range");
  check(p.residual_diagonal_.size() <= p.support_.size(), ErrorCode::Internal, "cokernel state: residual rank");
  for (std::size_t i = 0; i < p.residual_rank_; ++i) {
    if (p.residual_diagonal_[i] == 1) continue;
    p.torsion_.push_back(p.residual_diagonal_[i]);
    p.torsion_rows_.push_back(i);
  }
  p.torsion_lifts_ = std::move(s.torsion_lifts);
  check(p.torsion_lifts_.size() == p.torsion_.size(), ErrorCode::Internal, "cokernel state: lift count");
  return p;
}

}  // namespace shacalc
