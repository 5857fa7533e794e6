#include <doctest.h>

#include <cmath>

#include "redei/quadfield.hpp"

using namespace redei;

namespace {

// Kronecker symbol (D/n) for a fundamental discriminant D and n > 0.
int kronecker(long D, long n) {
  int r = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    long m = ((D % 8) + 8) % 8;
    if (m == 3 || m == 5) r = -r;
  }
  if (n == 1) return r;
  return r * jacobi(Integer(D), Integer(n));
}

double log_abs(const Rational& q) {
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t()), md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::fabs(mn / md)) + static_cast<double>(en - ed) * std::log(2.0);
}

// Dirichlet's class number formula, an analytic oracle independent of forms.
long analytic_class_number(const QuadField& K) {
  const long D = K.disc().get_si();
  if (D < 0) {
    const double w = D == -3 ? 6 : D == -4 ? 4 : 2;
    double s = 0;
    for (long a = 1; a < -D; ++a) s += kronecker(D, a) * static_cast<double>(a);
    return std::lround(-w / 2 * s / static_cast<double>(-D));
  }
  const QuadElem& e = *K.fundamental_unit();
  // log(x + y sqrt d) with x, y > 0: log of 2x up to a negligible error when x is large.
  double reg;
  if (e.x < Rational(1000000)) {
    reg = std::log(e.x.get_d() + e.y.get_d() * std::sqrt(K.d().get_d()));
  } else {
    reg = std::log(2.0) + log_abs(e.x);
  }
  double s = 0;
  for (long a = 1; a < D; ++a) s += kronecker(D, a) * std::log(std::sin(M_PI * a / static_cast<double>(D)));
  return std::lround(-s / (2 * reg));
}

// Smallest x + y sqrt d > 1 of norm +-1 by increasing y.
std::optional<QuadElem> pell_bruteforce(long d, long ybound) {
  const bool half = d % 4 == 1;
  for (long y = 1; y <= ybound; ++y) {
    for (long sgn : {-1L, 1L}) {
      Integer t = Integer(d) * y * y + (half ? 4 : 1) * sgn;
      if (t > 0 && is_square(t)) {
        Integer x = isqrt(t);
        if (half) {
        Rational hx(x, 2), hy(y, 2);
        hx.canonicalize();
        hy.canonicalize();
        return QuadElem(hx, hy, d);
      }
        return QuadElem(Rational(x), Rational(y), d);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("small fields") {
  CHECK(QuadField::make(-23).class_number() == 3);
  CHECK(QuadField::make(-1).class_number() == 1);
  CHECK(QuadField::make(-5).class_number() == 2);
  CHECK(QuadField::make(-5).disc() == -20);
  CHECK(QuadField::make(79).class_number() == 3);
  const QuadField Q2 = QuadField::make(2);
  const auto& e = Q2.fundamental_unit();
  REQUIRE(e.has_value());
  CHECK(e->x == 1);
  CHECK(e->y == 1);
  CHECK(QuadField::make(-1).torsion_unit() == QuadElem(0, 1, -1));
}

TEST_CASE("class numbers match the analytic formula") {
  int tested = 0;
  for (long d = -600; d <= 600; ++d) {
    if (d == 0 || d == 1 || squarefree_part(Integer(d)) != d) continue;
    QuadField K = QuadField::make(d);
    CHECK_MESSAGE(K.class_number() == analytic_class_number(K), "d=" << d);
    ++tested;
  }
  CHECK(tested > 700);
}

TEST_CASE("Q(sqrt p*) has odd class number and unit norm -1 for p = 1 mod 4") {
  for (long p : primes_up_to(3000)) {
    if (p == 2) continue;
    const long d = p % 4 == 1 ? p : -p;
    QuadField K = QuadField::make(d);
    CHECK_MESSAGE(K.class_number() % 2 == 1, "p=" << p);
    if (d > 0) CHECK_MESSAGE(K.fundamental_unit()->norm() == -1, "p=" << p);
  }
}

TEST_CASE("fundamental units agree with brute-force Pell") {
  int compared = 0;
  for (long d = 2; d <= 300; ++d) {
    if (squarefree_part(Integer(d)) != d) continue;
    auto brute = pell_bruteforce(d, 200000);
    if (!brute) continue;
    const QuadField K = QuadField::make(d);
    const QuadElem& e = *K.fundamental_unit();
    CHECK_MESSAGE(e == *brute, "d=" << d << " got " << e.to_string() << " brute " << brute->to_string());
    ++compared;
  }
  CHECK(compared > 150);
}

TEST_CASE("S-unit generators have S-unit norms and squares localize trivially") {
  for (long d : {-23L, -47L, 17L, 241L, 73L}) {
    QuadField K = QuadField::make(d);
    SUnitBasis B = s_unit_basis(K, {2, 3, Integer(d > 0 ? d : -d)});
    for (const auto& g : B.gens) {
      Rational n = g.norm();
      CHECK(n.get_den() == 1);
      Integer m = abs(n.get_num());
      for (long l : {2L, 3L, d > 0 ? d : -d}) remove_factor(m, Integer(l));
      CHECK(m == 1);
      for (const auto& w : B.primes) CHECK(K.localize(g * g, w).is_zero());
    }
  }
}
