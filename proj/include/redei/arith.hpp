#pragma once

// Exact integer and local-field primitives over Q: factorization, residue
// symbols, Hilbert symbols and canonical square classes of Q_v.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace redei {

using Integer = mpz_class;
using Rational = mpq_class;

struct FactorBudget {
  std::uint64_t rho_iterations = 1ull << 24;  // per Pollard-Brent attempt
  int rho_attempts = 64;
};

struct FactoredInt {
  int sign = 1;
  std::vector<std::pair<Integer, unsigned>> factors;  // primes strictly increasing

  Integer value() const;
  std::vector<Integer> primes() const;
};

FactoredInt factor(const Integer& n, const FactorBudget& budget = {});
bool is_prime(const Integer& n);
Integer next_prime(const Integer& n);
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

/// Signed squarefree m with n/m a positive square.
Integer squarefree_part(const Integer& n);
Integer squarefree_part(const Rational& q);

int jacobi(const Integer& a, const Integer& n);

/// Square root modulo an odd prime; the smaller of the two roots.
Integer sqrt_mod(const Integer& a, const Integer& p);
/// Root of a modulo p^k lifted from `root` (odd p, p does not divide a).
Integer hensel_sqrt(const Integer& a, const Integer& p, unsigned k, const Integer& root);
/// Root of a ≡ 1 (mod 8) modulo 2^k, congruent to 1 mod 4.
Integer sqrt_mod_2k(const Integer& a, unsigned k);

/// v_p(n) for n != 0.
int valuation(const Integer& n, const Integer& p);
int valuation(const Rational& q, const Integer& p);
/// Exponent of p in n, with n divided out in place.
int remove_factor(Integer& n, const Integer& p);

Integer isqrt(const Integer& n);
bool is_square(const Integer& n);
bool is_square(const Rational& q);
/// a^-1 mod m for a coprime to m, or the residue of a rational with unit denominator.
Integer mod_inverse(const Integer& a, const Integer& m);
Integer residue(const Rational& q, const Integer& m);
Integer ipow(const Integer& base, unsigned e);

class Place {
 public:
  static Place real() { return Place(Integer(0)); }
  static Place finite(const Integer& prime) { return Place(prime); }

  bool is_real() const { return prime_ == 0; }
  const Integer& prime() const { return prime_; }
  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  friend bool operator<(const Place& a, const Place& b) { return a.prime_ < b.prime_; }

 private:
  explicit Place(Integer p) : prime_(std::move(p)) {}
  Integer prime_;
};

/// Quadratic Hilbert symbol (a,b)_v, returned as +1 or -1.
int hilbert(const Rational& a, const Rational& b, const Place& v);
/// Places where (a,b)_v can be nontrivial: the real place and primes dividing 2ab.
std::vector<Place> hilbert_support(const Rational& a, const Rational& b);

/// Element of Q_v*/Q_v*^2.  unit is the QR bit (odd l: 0 residue, 1 non-residue),
/// the residue mod 8 in {1,3,5,7} at l = 2, and the sign bit at the real place.
struct SquareClass {
  Place place = Place::real();
  bool odd_valuation = false;
  unsigned unit = 0;

  bool is_trivial() const;
  SquareClass operator*(const SquareClass& other) const;
  friend bool operator==(const SquareClass&, const SquareClass&) = default;
  /// Smallest-magnitude integer in the class built from the canonical data.
  Integer representative() const;
};

SquareClass square_class(const Rational& x, const Place& v);

std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

}  // namespace redei
