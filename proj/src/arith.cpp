#include "redei/arith.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "redei/errors.hpp"

namespace redei {

namespace {

constexpr std::uint32_t kTrialBound = 1000000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(kTrialBound);
  return primes;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for n < 2^64
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    u64 x = powmod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool fits_u64(const Integer& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const Integer& n) {
  u64 r = 0;
  mpz_export(&r, nullptr, -1, sizeof(r), 0, 0, n.get_mpz_t());
  return r;
}

Integer from_u64(u64 v) {
  Integer r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

// Pollard rho with Brent's cycle detection; returns a nontrivial divisor or 0.
u64 brent_u64(u64 n, u64 c, u64 max_iter) {
  if (n % 2 == 0) return 2;
  u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
  const u64 m = 128;
  u64 iter = 0;
  auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
  do {
    x = y;
    for (u64 i = 0; i < r; ++i) y = f(y);
    u64 k = 0;
    do {
      ys = y;
      for (u64 i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
      k += m;
      iter += m;
    } while (k < r && g == 1);
    r <<= 1;
    if (iter > max_iter) return 0;
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

Integer brent_mpz(const Integer& n, unsigned long c, std::uint64_t max_iter) {
  Integer y = 2, r = 1, q = 1, g = 1, x, ys;
  const unsigned long m = 128;
  std::uint64_t iter = 0;
  auto f = [&](const Integer& v) {
    Integer t = v * v + c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  do {
    x = y;
    for (Integer i = 0; i < r; ++i) y = f(y);
    Integer k = 0;
    do {
      ys = y;
      Integer lim = r - k;
      if (lim > m) lim = m;
      for (Integer i = 0; i < lim; ++i) {
        y = f(y);
        Integer diff = abs(x - y);
        q = q * diff;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      iter += m;
    } while (k < r && g == 1);
    r *= 2;
    if (iter > max_iter) return 0;
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      Integer diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? Integer(0) : g;
}

Integer find_divisor(const Integer& n, const FactorBudget& budget) {
  for (int attempt = 1; attempt <= budget.rho_attempts; ++attempt) {
    if (fits_u64(n)) {
      u64 d = brent_u64(to_u64(n), static_cast<u64>(attempt), budget.rho_iterations);
      if (d != 0) return from_u64(d);
    } else {
      Integer d = brent_mpz(n, static_cast<unsigned long>(attempt), budget.rho_iterations);
      if (d != 0) return d;
    }
  }
  throw Error(ErrorKind::BudgetExceeded, "could not split " + n.get_str());
}

void factor_into(const Integer& n, std::vector<Integer>& out, const FactorBudget& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = find_divisor(n, budget);
  factor_into(d, out, budget);
  factor_into(n / d, out, budget);
}

}  // namespace

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return miller_rabin_u64(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Integer next_prime(const Integer& n) {
  Integer p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

Integer FactoredInt::value() const {
  Integer v = sign;
  for (const auto& [p, e] : factors) v *= ipow(p, e);
  return v;
}

std::vector<Integer> FactoredInt::primes() const {
  std::vector<Integer> out;
  for (const auto& f : factors) out.push_back(f.first);
  return out;
}

FactoredInt factor(const Integer& n_in, const FactorBudget& budget) {
  if (n_in == 0) throw Error(ErrorKind::InvalidArgument, "factor(0)");
  FactoredInt result;
  result.sign = n_in < 0 ? -1 : 1;
  Integer n = abs(n_in);
  for (std::uint32_t p : small_primes()) {
    if (Integer(p) * p > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      result.factors.emplace_back(Integer(p), e);
    }
  }
  if (n == 1) return result;
  std::vector<Integer> rest;
  factor_into(n, rest, budget);
  std::sort(rest.begin(), rest.end());
  for (const auto& p : rest) {
    if (!result.factors.empty() && result.factors.back().first == p) {
      ++result.factors.back().second;
    } else {
      result.factors.emplace_back(p, 1u);
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return result;
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "squarefree_part(0)");
  FactoredInt f = factor(n);
  Integer m = f.sign;
  for (const auto& [p, e] : f.factors) {
    if (e % 2 == 1) m *= p;
  }
  return m;
}

Integer squarefree_part(const Rational& q) {
  return squarefree_part(Integer(q.get_num() * q.get_den()));
}

int jacobi(const Integer& a, const Integer& n) {
  if (n <= 0 || mpz_even_p(n.get_mpz_t())) throw Error(ErrorKind::InvalidArgument, "jacobi needs odd n > 0");
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

Integer sqrt_mod(const Integer& a_in, const Integer& p) {
  Integer a = a_in % p;
  if (a < 0) a += p;
  if (a == 0) throw Error(ErrorKind::Zero, "sqrt_mod: p divides a");
  if (jacobi(a, p) != 1) throw Error(ErrorKind::NotASquare, a.get_str() + " mod " + p.get_str());
  // Tonelli-Shanks
  Integer q = p - 1;
  unsigned s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (jacobi(z, p) != -1) ++z;
  Integer m = s, c, t, r, tmp;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  Integer e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    unsigned i = 0;
    tmp = t;
    while (tmp != 1) {
      tmp = tmp * tmp % p;
      ++i;
    }
    Integer b = c;
    for (unsigned j = 0; j + 1 + i < m.get_ui(); ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return std::min(r, Integer(p - r));
}

Integer hensel_sqrt(const Integer& a, const Integer& p, unsigned k, const Integer& root) {
  Integer r = root;
  Integer mod = p;
  for (unsigned have = 1; have < k;) {
    have = std::min(k, 2 * have);
    mod = ipow(p, have);
    // r <- r - (r^2 - a) / (2r)
    Integer num = r * r - a;
    Integer inv = mod_inverse(Integer(2 * r), mod);
    r = (r - num * inv) % mod;
    if (r < 0) r += mod;
  }
  return r;
}

Integer sqrt_mod_2k(const Integer& a_in, unsigned k) {
  Integer mod = ipow(2, k);
  Integer a = a_in % mod;
  if (a < 0) a += mod;
  if (k <= 3) return 1;
  Integer r = 1;
  for (unsigned j = 3; j < k; ++j) {
    // r^2 ≡ a mod 2^j; fix the next bit
    Integer m = ipow(2, j + 1);
    Integer diff = (r * r - a) % m;
    if (diff != 0) r += ipow(2, j - 1);
  }
  r %= mod;
  if (r % 4 != 1) r = mod - r;
  return r;
}

int remove_factor(Integer& n, const Integer& p) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of 0");
  return static_cast<int>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

int valuation(const Integer& n, const Integer& p) {
  Integer m = n;
  return remove_factor(m, p);
}

int valuation(const Rational& q, const Integer& p) {
  return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

bool is_square(const Rational& q) {
  return is_square(Integer(q.get_num())) && is_square(Integer(q.get_den()));
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw Error(ErrorKind::InvalidArgument, "not invertible: " + a.get_str() + " mod " + m.get_str());
  return r;
}

Integer residue(const Rational& q, const Integer& m) {
  Integer r = Integer(q.get_num()) * mod_inverse(Integer(q.get_den()), m) % m;
  if (r < 0) r += m;
  return r;
}

Integer ipow(const Integer& base, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::string Place::to_string() const { return is_real() ? "inf" : prime_.get_str(); }

int hilbert(const Rational& a_in, const Rational& b_in, const Place& v) {
  if (a_in == 0 || b_in == 0) throw Error(ErrorKind::InvalidArgument, "hilbert of 0");
  Integer a = a_in.get_num() * a_in.get_den();
  Integer b = b_in.get_num() * b_in.get_den();
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.prime();
  int alpha = remove_factor(a, p);
  int beta = remove_factor(b, p);
  if (p != 2) {
    int sign = 1;
    if ((alpha * beta) % 2 != 0 && mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) sign = -sign;
    if (beta % 2 != 0) sign *= jacobi(a, p);
    if (alpha % 2 != 0) sign *= jacobi(b, p);
    return sign;
  }
  auto eps = [](const Integer& u) { return static_cast<int>(mpz_fdiv_ui(u.get_mpz_t(), 4) == 3); };
  auto omega = [](const Integer& u) {
    unsigned long r = mpz_fdiv_ui(u.get_mpz_t(), 8);
    return static_cast<int>(r == 3 || r == 5);
  };
  int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
  return e % 2 == 0 ? 1 : -1;
}

std::vector<Place> hilbert_support(const Rational& a, const Rational& b) {
  std::vector<Place> places{Place::real(), Place::finite(2)};
  Integer n = abs(Integer(a.get_num() * a.get_den() * b.get_num() * b.get_den()));
  for (const auto& p : factor(n).primes()) {
    if (p != 2) places.push_back(Place::finite(p));
  }
  return places;
}

bool SquareClass::is_trivial() const {
  if (odd_valuation) return false;
  if (!place.is_real() && place.prime() == 2) return unit == 1;
  return unit == 0;
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
  SquareClass r;
  r.place = place;
  r.odd_valuation = odd_valuation != o.odd_valuation;
  if (!place.is_real() && place.prime() == 2) {
    r.unit = (unit * o.unit) % 8;
  } else {
    r.unit = unit ^ o.unit;
  }
  return r;
}

Integer SquareClass::representative() const {
  if (place.is_real()) return unit ? -1 : 1;
  const Integer& p = place.prime();
  Integer r = odd_valuation ? p : Integer(1);
  if (p == 2) {
    static const int reps[8] = {0, 1, 0, 3, 0, -3, 0, -1};
    return r * reps[unit];
  }
  if (unit) {
    Integer n = 2;
    while (jacobi(n, p) != -1) ++n;
    r *= n;
  }
  return r;
}

SquareClass square_class(const Rational& x, const Place& v) {
  if (x == 0) throw Error(ErrorKind::InvalidArgument, "square_class of 0");
  SquareClass c;
  c.place = v;
  if (v.is_real()) {
    c.unit = x < 0 ? 1 : 0;
    return c;
  }
  Integer num = x.get_num(), den = x.get_den();
  const Integer& p = v.prime();
  int val = remove_factor(num, p) - remove_factor(den, p);
  c.odd_valuation = (val % 2) != 0;
  Integer u = num * den;  // same class as num/den
  if (p == 2) {
    c.unit = static_cast<unsigned>(mpz_fdiv_ui(u.get_mpz_t(), 8));
  } else {
    c.unit = jacobi(u, p) == 1 ? 0 : 1;
  }
  return c;
}

std::string to_string(const Integer& n) { return n.get_str(); }
std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace redei
