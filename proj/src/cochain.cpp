#include "shacalc/cochain.hpp"

#include <algorithm>

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Tuple digits are element indices 1..N-1, most significant first.
std::size_t encode(const std::vector<Element>& tuple, std::size_t base) {
  std::size_t idx = 0;
  for (Element g : tuple) idx = idx * base + (g - 1);
  return idx;
}

void decode(std::size_t idx, std::size_t base, std::vector<Element>& tuple) {
  for (std::size_t k = tuple.size(); k-- > 0;) {
    tuple[k] = idx % base + 1;
    idx /= base;
  }
}

}  // namespace

BarComplex::BarComplex(const GLattice& m)
    : lattice_(m), group_(m.group()), order_(m.group()->order()), rank_(m.rank()) {
  action_.resize(order_ * rank_ * rank_);
  for (Element g = 0; g < order_; ++g) {
    const IntMatrix& a = m.action(g);
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) {
        check(a(i, j).fits_slong_p(), ErrorCode::Internal, "action entry too large");
        action_[(g * rank_ + i) * rank_ + j] = a(i, j).get_si();
      }
  }
}

std::size_t BarComplex::tuple_count(std::size_t n) const { return ipow(order_ - 1, n); }

std::vector<Element> BarComplex::tuple_of(std::size_t index, std::size_t n) const {
  std::vector<Element> t(n);
  decode(index, order_ - 1, t);
  return t;
}

std::size_t BarComplex::index_of(const std::vector<Element>& tuple) const { return encode(tuple, order_ - 1); }

std::vector<SparseVector> BarComplex::coboundary_columns(std::size_t n) const {
  const std::size_t base = order_ - 1;
  const std::size_t src_tuples = tuple_count(n);
  const std::size_t stride = tuple_count(n);  // weight of the leading digit in C^{n+1}
  std::vector<SparseVector> columns;
  columns.reserve(src_tuples * rank_);
  std::vector<Element> t(n), target(n + 1);
  std::vector<std::pair<std::size_t, long>> entries;
  const long last_sign = (n + 1) % 2 == 0 ? 1 : -1;

  for (std::size_t ti = 0; ti < src_tuples; ++ti) {
    decode(ti, base, t);
    for (std::size_t c = 0; c < rank_; ++c) {
      entries.clear();
      // g_1 f(g_2..g_{n+1})
      for (Element g1 = 1; g1 < order_; ++g1) {
        const std::size_t tuple = (g1 - 1) * stride + ti;
        for (std::size_t i = 0; i < rank_; ++i) {
          long v = act(g1, i, c);
          if (v != 0) entries.emplace_back(tuple * rank_ + i, v);
        }
      }
      // (-1)^i f(.., g_i g_{i+1}, ..): split t_i as a * (a^-1 t_i)
      for (std::size_t i = 0; i < n; ++i) {
        const long sign = (i + 1) % 2 == 0 ? 1 : -1;
        for (std::size_t k = 0; k < i; ++k) target[k] = t[k];
        for (std::size_t k = i + 1; k < n; ++k) target[k + 1] = t[k];
        for (Element a = 1; a < order_; ++a) {
          if (a == t[i]) continue;
          target[i] = a;
          target[i + 1] = group_->mul(group_->inv(a), t[i]);
          entries.emplace_back(encode(target, base) * rank_ + c, sign);
        }
      }
      // (-1)^{n+1} f(g_1..g_n)
      for (Element g = 1; g < order_; ++g) entries.emplace_back((ti * base + (g - 1)) * rank_ + c, last_sign);

      std::sort(entries.begin(), entries.end());
      SparseVector col;
      for (std::size_t k = 0; k < entries.size();) {
        std::size_t idx = entries[k].first;
        long sum = 0;
        for (; k < entries.size() && entries[k].first == idx; ++k) sum += entries[k].second;
        if (sum != 0) col.push_back({idx, Int(sum)});
      }
      columns.push_back(std::move(col));
    }
  }
  return columns;
}

Cochain BarComplex::coboundary(const Cochain& f, std::size_t n) const {
  check(f.size() == dimension(n), ErrorCode::Internal, "coboundary: cochain has the wrong size");
  const std::size_t base = order_ - 1;
  const std::size_t tuples = tuple_count(n + 1);
  const std::size_t stride = tuple_count(n);
  Cochain out(tuples * rank_);
  std::vector<Element> g(n + 1), merged(n);
  Int tmp;
  for (std::size_t ti = 0; ti < tuples; ++ti) {
    decode(ti, base, g);
    Int* dst = &out[ti * rank_];
    // g_1 f(g_2..g_{n+1})
    const std::size_t tail = ti % stride;
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t c = 0; c < rank_; ++c) {
        long a = act(g[0], i, c);
        if (a == 0) continue;
        const Int& v = f[tail * rank_ + c];
        if (sgn(v) == 0) continue;
        if (a == 1) dst[i] += v;
        else if (a == -1) dst[i] -= v;
        else {
          tmp = v * a;
          dst[i] += tmp;
        }
      }
    for (std::size_t i = 0; i < n; ++i) {
      Element p = group_->mul(g[i], g[i + 1]);
      if (p == 0) continue;
      for (std::size_t k = 0; k < i; ++k) merged[k] = g[k];
      merged[i] = p;
      for (std::size_t k = i + 2; k <= n; ++k) merged[k - 1] = g[k];
      const std::size_t src = encode(merged, base);
      const bool plus = (i + 1) % 2 == 0;
      for (std::size_t c = 0; c < rank_; ++c) {
        if (plus) dst[c] += f[src * rank_ + c];
        else dst[c] -= f[src * rank_ + c];
      }
    }
    const std::size_t head = ti / base;
    const bool plus = (n + 1) % 2 == 0;
    for (std::size_t c = 0; c < rank_; ++c) {
      if (plus) dst[c] += f[head * rank_ + c];
      else dst[c] -= f[head * rank_ + c];
    }
  }
  return out;
}

Cochain restrict_cochain(const Cochain& f, std::size_t n, std::size_t rank, const Subgroup& h) {
  const std::size_t gbase = h.parent()->order() - 1;
  const std::size_t hbase = h.order() - 1;
  const std::size_t tuples = ipow(hbase, n);
  check(f.size() == ipow(gbase, n) * rank, ErrorCode::Internal, "restriction: cochain has the wrong size");
  Cochain out(tuples * rank);
  std::vector<Element> local(n), global(n);
  for (std::size_t ti = 0; ti < tuples; ++ti) {
    decode(ti, hbase, local);
    for (std::size_t k = 0; k < n; ++k) global[k] = h.members()[local[k]];
    const std::size_t src = encode(global, gbase);
    for (std::size_t c = 0; c < rank; ++c) out[ti * rank + c] = f[src * rank + c];
  }
  return out;
}

Cochain inflate_cochain(const Cochain& f, std::size_t n, const QuotientGroup& q, const IntMatrix& inclusion) {
  const std::size_t gbase = q.parent->order() - 1;
  const std::size_t qbase = q.quotient->order() - 1;
  const std::size_t rg = inclusion.rows(), rq = inclusion.cols();
  check(f.size() == ipow(qbase, n) * rq, ErrorCode::Internal, "inflation: cochain has the wrong size");
  const std::size_t tuples = ipow(gbase, n);
  Cochain out(tuples * rg);
  std::vector<Element> g(n), image(n);
  for (std::size_t ti = 0; ti < tuples; ++ti) {
    decode(ti, gbase, g);
    bool degenerate = false;
    for (std::size_t k = 0; k < n && !degenerate; ++k) {
      image[k] = q.projection[g[k]];
      degenerate = image[k] == 0;
    }
    if (degenerate) continue;
    const std::size_t src = encode(image, qbase);
    for (std::size_t i = 0; i < rg; ++i)
      for (std::size_t c = 0; c < rq; ++c)
        if (sgn(inclusion(i, c)) != 0) out[ti * rg + i] += inclusion(i, c) * f[src * rq + c];
  }
  return out;
}

Cochain map_cochain(const Cochain& f, std::size_t tuples, const IntMatrix& matrix) {
  const std::size_t rs = matrix.cols(), rt = matrix.rows();
  check(f.size() == tuples * rs, ErrorCode::Internal, "coefficient map: cochain has the wrong size");
  Cochain out(tuples * rt);
  for (std::size_t ti = 0; ti < tuples; ++ti)
    for (std::size_t i = 0; i < rt; ++i)
      for (std::size_t c = 0; c < rs; ++c)
        if (sgn(matrix(i, c)) != 0 && sgn(f[ti * rs + c]) != 0) out[ti * rt + i] += matrix(i, c) * f[ti * rs + c];
  return out;
}

}  // namespace shacalc
