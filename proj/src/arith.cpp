#include "shacalc/arith.hpp"

#include "shacalc/error.hpp"

namespace shacalc {

namespace {

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

void check_odd_prime(const mpz_class& p) {
  check(p > 2 && is_prime(p), ErrorCode::NotOddPrime, p.get_str() + " is not an odd prime");
}

void validate(const BiquadElement& x) {
  for (const auto* d : {&x.d1, &x.d2})
    check(*d != 0 && *d != 1 && is_squarefree(*d), ErrorCode::BadBiquadratic,
          d->get_str() + " is not a square-free integer other than 0 and 1");
  check(x.d1 != x.d2, ErrorCode::BadBiquadratic, "d1 and d2 coincide");
  check(!is_perfect_square(x.d1 * x.d2), ErrorCode::BadBiquadratic, "d1 d2 is a square; the field is not biquadratic");
}

BiquadElement conjugate(const BiquadElement& x, int s1, int s2) {
  BiquadElement y = x;
  y.coeffs[1] *= s1;
  y.coeffs[2] *= s2;
  y.coeffs[3] *= s1 * s2;
  return y;
}

}  // namespace

bool is_prime(const mpz_class& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

bool is_perfect_square(const mpz_class& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

bool is_squarefree(const mpz_class& n) {
  mpz_class m = abs(n);
  if (m == 0) return false;
  for (mpz_class p = 2; p * p <= m; ++p) {
    if (mod(m, p) != 0) continue;
    m /= p;
    if (mod(m, p) == 0) return false;
  }
  return true;
}

int legendre(const mpz_class& a, const mpz_class& p) {
  check_odd_prime(p);
  mpz_class r = mod(a, p);
  if (r == 0) return 0;
  return powm(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int quartic_symbol(const mpz_class& a, const mpz_class& p) {
  check(p > 2 && is_prime(p) && mod(p, 4) == 1, ErrorCode::NotQuarticDomain, p.get_str() + " is not a prime ≡ 1 mod 4");
  check(legendre(a, p) == 1, ErrorCode::NotQuarticDomain, a.get_str() + " is not a nonzero square mod " + p.get_str());
  mpz_class r = powm(mod(a, p), (p - 1) / 4, p);
  if (r == 1) return 1;
  check(r == p - 1, ErrorCode::Internal, "quartic symbol is not ±1");
  return -1;
}

bool is_8th_power_unit_2adic(const mpz_class& a) {
  check(mod(a, 2) == 1, ErrorCode::EvenInput, a.get_str() + " is even");
  return mod(a, 32) == 1;
}

BiquadElement biquad_multiply(const BiquadElement& x, const BiquadElement& y) {
  check(x.d1 == y.d1 && x.d2 == y.d2, ErrorCode::BadBiquadratic, "elements of different fields");
  const mpq_class d1(x.d1), d2(x.d2);
  const auto& a = x.coeffs;
  const auto& b = y.coeffs;
  // Basis 1, s1, s2, s3 = s1 s2 with s1^2 = d1, s2^2 = d2, s1 s3 = d1 s2, s2 s3 = d2 s1.
  BiquadElement r{x.d1, x.d2, {}};
  r.coeffs[0] = a[0] * b[0] + d1 * a[1] * b[1] + d2 * a[2] * b[2] + d1 * d2 * a[3] * b[3];
  r.coeffs[1] = a[0] * b[1] + a[1] * b[0] + d2 * (a[2] * b[3] + a[3] * b[2]);
  r.coeffs[2] = a[0] * b[2] + a[2] * b[0] + d1 * (a[1] * b[3] + a[3] * b[1]);
  r.coeffs[3] = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1];
  return r;
}

mpq_class biquad_norm(const BiquadElement& x) {
  validate(x);
  BiquadElement p = biquad_multiply(x, conjugate(x, -1, 1));
  BiquadElement q = biquad_multiply(conjugate(x, 1, -1), conjugate(x, -1, -1));
  BiquadElement n = biquad_multiply(p, q);
  for (int i = 1; i < 4; ++i) check(n.coeffs[i] == 0, ErrorCode::Internal, "norm has a radical component");
  return n.coeffs[0];
}

Prop41Verdict check_prop41_params(const mpz_class& q, const mpz_class& m) {
  Prop41Verdict v;
  v.q_admissible = is_prime(q) && (q == 2 || mod(q, 8) == 5);
  if (v.q_admissible) {
    const mpz_class m8 = mod(m, 8), m16 = mod(m, 16);
    if (q == 2) v.m_congruence = m8 == 1 || m8 == 7 || m16 == 2 || m16 == 14;
    else v.m_congruence = m8 == 1 || m8 == 7 || m8 == 3 || m8 == 5;
  }
  v.no_squares = m != 0 && !is_perfect_square(m) && !is_perfect_square(-m) && !is_perfect_square(m * q) &&
                 !is_perfect_square(-m * q);
  return v;
}

}  // namespace shacalc
