#pragma once

// Exact integer checks for the explicit counterexample: residue symbols,
// admissible parameters, the norm from a biquadratic field and the 2-adic
// eighth-power criterion.

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

namespace shacalc {

int legendre(const mpz_class& a, const mpz_class& p);

// a^{(p-1)/4} mod p as +1 / -1, for p ≡ 1 mod 4 and a a nonzero square mod p.
int quartic_symbol(const mpz_class& a, const mpz_class& p);

// The congruence a ≡ 1 mod 32, sufficient for a to be an 8th power in Z_2.
bool is_8th_power_unit_2adic(const mpz_class& a);

bool is_prime(const mpz_class& n);
bool is_squarefree(const mpz_class& n);
bool is_perfect_square(const mpz_class& n);  // false for negative n

// a + b√d1 + c√d2 + e√(d1 d2)
struct BiquadElement {
  mpz_class d1, d2;
  std::array<mpq_class, 4> coeffs;
};

// Product of the four conjugates under √d1 -> ±√d1, √d2 -> ±√d2.
mpq_class biquad_norm(const BiquadElement& x);
BiquadElement biquad_multiply(const BiquadElement& x, const BiquadElement& y);

struct Prop41Verdict {
  bool q_admissible = false;     // q prime, q = 2 or q ≡ 5 mod 8
  bool m_congruence = false;     // class of m as required for q
  bool no_squares = false;       // none of ±m, ±mq a square
  bool all() const { return q_admissible && m_congruence && no_squares; }
};
Prop41Verdict check_prop41_params(const mpz_class& q, const mpz_class& m);

}  // namespace shacalc
