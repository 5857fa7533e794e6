#include <doctest.h>

#include <random>

#include "redei/arith.hpp"
#include "redei/errors.hpp"
#include "redei/points.hpp"

using namespace redei;

namespace {

bool naive_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// x^2 = a y^2 + b z^2 with (x,y,z) != 0.  For squarefree a, b a solution exists
// with |y|, |z| <= sqrt(|b|), sqrt(|a|) after removing gcd(a,b) (Holzer), so a
// box of 50 is generous.
bool has_small_solution(long a, long b) {
  for (long y = 0; y <= 50; ++y) {
    for (long z = 0; z <= 50; ++z) {
      if (y == 0 && z == 0) continue;
      long r = a * y * y + b * z * z;
      if (r < 0) continue;
      long s = static_cast<long>(std::llround(std::sqrt(static_cast<double>(r))));
      if (s * s == r) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("primality and factorization agree with trial division") {
  for (long n = -50; n <= 3000; ++n) {
    if (n == 0) continue;
    CHECK(is_prime(Integer(n)) == naive_prime(n));
    FactoredInt f = factor(Integer(n));
    CHECK(f.value() == n);
    for (const auto& [q, e] : f.factors) CHECK(naive_prime(q.get_si()));
  }
  const Integer big = Integer("1000000007") * Integer("998244353") * Integer("2147483647");
  FactoredInt f = factor(big);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].first == Integer("998244353"));
  CHECK(next_prime(Integer(241)) == 251);
}

TEST_CASE("squarefree parts and square roots") {
  CHECK(squarefree_part(Integer(-72)) == -2);
  CHECK(squarefree_part(Rational(18, 50)) == 1);
  CHECK(squarefree_part(Rational(3, 8)) == 6);
  for (long p : {7L, 13L, 241L, 10007L}) {
    for (long a = 1; a < 60; ++a) {
      if (jacobi(Integer(a), Integer(p)) != 1) continue;
      Integer r = sqrt_mod(Integer(a), Integer(p));
      CHECK(Integer(r * r - a) % p == 0);
      Integer R = hensel_sqrt(Integer(a), Integer(p), 5, r);
      CHECK(Integer(R * R - a) % ipow(Integer(p), 5) == 0);
    }
  }
  Integer r = sqrt_mod_2k(Integer(17), 10);
  CHECK(Integer(r * r - 17) % 1024 == 0);
  CHECK(valuation(Rational(-48, 5), Integer(2)) == 4);
  CHECK(valuation(Rational(-48, 5), Integer(5)) == -1);
}

TEST_CASE("Hilbert symbols: known values") {
  CHECK(hilbert(-1, -1, Place::finite(2)) == -1);
  CHECK(hilbert(-1, -1, Place::real()) == -1);
  CHECK(hilbert(2, 3, Place::finite(3)) == -1);
  CHECK(hilbert(2, 7, Place::finite(7)) == 1);
  CHECK(hilbert(5, 5, Place::finite(5)) == 1);
  CHECK(hilbert(3, 3, Place::finite(3)) == -1);
}

TEST_CASE("Hilbert product formula on random pairs") {
  std::mt19937_64 rng(20241);
  std::uniform_int_distribution<long> dist(-100000, 100000);
  int tested = 0;
  while (tested < 500) {
    long a = dist(rng), b = dist(rng);
    if (a == 0 || b == 0) continue;
    int prod = 1;
    for (const auto& v : hilbert_support(a, b)) prod *= hilbert(a, b, v);
    CHECK(prod == 1);
    ++tested;
  }
}

TEST_CASE("Hilbert symbols against small solutions and local brute force") {
  for (long a = -50; a <= 50; ++a) {
    for (long b = -50; b <= 50; ++b) {
      if (a == 0 || b == 0) continue;
      if (squarefree_part(Integer(a)) != a || squarefree_part(Integer(b)) != b) continue;
      bool everywhere = true;
      for (const auto& v : hilbert_support(a, b)) everywhere = everywhere && hilbert(a, b, v) == 1;
      CHECK_MESSAGE(everywhere == has_small_solution(a, b), "a=" << a << " b=" << b);
    }
  }
  // Local route: a y^2 + b z^2 = w^2 over Q_l by search modulo l^k.
  for (long a = -12; a <= 12; ++a) {
    for (long b = -12; b <= 12; ++b) {
      if (a == 0 || b == 0) continue;
      for (long l : {2L, 3L, 5L, 7L, 11L}) {
        CHECK(conic_solvable_bruteforce(a, b, 1, l) == (hilbert(a, b, Place::finite(l)) == 1));
      }
    }
  }
}

TEST_CASE("square classes") {
  SquareClass c = square_class(Rational(-12), Place::finite(2));
  CHECK_FALSE(c.odd_valuation);
  CHECK(c.unit == 5);
  // -3 and 6 differ by -1/2, a 3-adic square; 2 and -1 are both non-residues.
  CHECK(square_class(Rational(-3), Place::finite(3)) == square_class(Rational(6), Place::finite(3)));
  CHECK(square_class(Rational(2), Place::finite(3)) == square_class(Rational(-1), Place::finite(3)));
  CHECK(square_class(Rational(2), Place::finite(3)).representative() == 2);
  CHECK(square_class(Rational(-5), Place::real()).representative() == -1);
  for (long x = 1; x < 200; ++x) {
    for (long l : {2L, 3L, 5L}) {
      auto s = square_class(Rational(x), Place::finite(l));
      CHECK(square_class(Rational(s.representative()), Place::finite(l)) == s);
      CHECK((square_class(Rational(x * 49), Place::finite(l)) == s));
    }
  }
}

TEST_CASE("errors carry kinds") {
  CHECK_THROWS_AS(hilbert(0, 3, Place::real()), Error);
  try {
    hilbert(0, 3, Place::real());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}
