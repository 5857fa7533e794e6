#include "redei/redei_symbol.hpp"

#include <algorithm>
#include <numeric>

#include "redei/errors.hpp"
#include "redei/localfield.hpp"

namespace redei {

namespace {

template <class F>
auto with_prec(F&& f) -> decltype(f(0)) {
  for (int n = 48;; n *= 2) {
    try {
      return f(n);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted || n >= 8192) throw;
    }
  }
}

long mod8(const Integer& d) {
  Integer r = d % 8;
  if (r < 0) r += 8;
  return r.get_si();
}

enum class Split { Split, Inert, Ramified };

Split splitting_of(const Integer& s, const Integer& l) {
  if (l == 2) {
    long r = mod8(s);
    if (r == 1) return Split::Split;
    if (r == 5) return Split::Inert;
    return Split::Ramified;
  }
  if (s % l == 0) return Split::Ramified;
  return jacobi(s, l) == 1 ? Split::Split : Split::Inert;
}

// A root of s in Z_l known modulo l^n; sign picks one of the two.
Integer root_approx(const Integer& s, const Integer& l, int n, int sign) {
  Integer r;
  if (l == 2) {
    unsigned k = static_cast<unsigned>(n + 1);
    Integer m = ipow(2, k);
    Integer sm = s % m;
    if (sm < 0) sm += m;
    r = sqrt_mod_2k(sm, k);
  } else {
    Integer m = ipow(l, static_cast<unsigned>(n));
    Integer sm = s % m;
    if (sm < 0) sm += m;
    r = hensel_sqrt(sm, l, static_cast<unsigned>(n), sqrt_mod(s, l));
  }
  return sign > 0 ? r : Integer(-r);
}

struct Embedded {
  LocalField field;
  LElem elem;
};

// u + v sqrt(s) in every completion of Q(sqrt s) above l.
std::vector<Embedded> completions(const Integer& l, const Integer& s, const Rational& u, const Rational& v, int n) {
  std::vector<Embedded> out;
  switch (splitting_of(s, l)) {
    case Split::Split:
      for (int sign : {1, -1}) {
        LElem e = LElem::of(u);
        if (v != 0) e = LElem{u + v * Rational(root_approx(s, l, n, sign)), 0, n + valuation(v, l)};
        out.push_back({LocalField::base(l), e});
      }
      break;
    default:
      out.push_back({LocalField::quadratic(l, s), LElem{u, v, kExact}});
      break;
  }
  return out;
}

bool has_root_mod(const Integer& q, const Integer& c4, const Integer& c2, const Integer& c0) {
  // X^4 + c2 X^2 + c0 (c4 = 1) modulo a small prime q
  (void)c4;
  const long p = q.get_si();
  const long b = Integer(((c2 % q) + q) % q).get_si();
  const long c = Integer(((c0 % q) + q) % q).get_si();
  for (long X = 0; X < p; ++X) {
    __int128 x2 = static_cast<__int128>(X) * X % p;
    __int128 val = (x2 * x2 + b * x2 + c) % p;
    if (val == 0) return true;
  }
  return false;
}

std::string twist_label(const Integer& t) { return "t=" + t.get_str(); }

}  // namespace

Integer field_discriminant(const Integer& d_in) {
  Integer d = squarefree_part(d_in);
  if (d == 1) return 1;
  Integer r = d % 4;
  if (r < 0) r += 4;
  return r == 1 ? d : Integer(4 * d);
}

Admissibility admissible(const Integer& a_in, const Integer& b_in, const Integer& c_in) {
  Admissibility r;
  const Integer a = squarefree_part(a_in), b = squarefree_part(b_in), c = squarefree_part(c_in);
  const std::pair<Integer, Integer> pairs[] = {{a, b}, {a, c}, {b, c}};
  for (const auto& [u, v] : pairs) {
    for (const auto& place : hilbert_support(u, v)) {
      if (hilbert(u, v, place) == -1) {
        r.ok = false;
        r.failures.push_back("(" + u.get_str() + "," + v.get_str() + ")_" + place.to_string() + " = -1");
      }
    }
  }
  Integer g;
  Integer da = field_discriminant(a), db = field_discriminant(b), dc = field_discriminant(c);
  mpz_gcd(g.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dc.get_mpz_t());
  if (g != 1) {
    r.ok = false;
    r.failures.push_back("gcd of discriminants: " + g.get_str());
  }
  return r;
}

ConicSolution solve_conic(const Integer& a, const Integer& b, int skip) {
  for (const auto& place : hilbert_support(a, b)) {
    if (hilbert(a, b, place) == -1) {
      throw Error(ErrorKind::NotLocallySolvable, "(" + a.get_str() + "," + b.get_str() + ")_" + place.to_string() + " = -1");
    }
  }
  // Holzer: some solution has |y| <= sqrt|b| and |z| <= sqrt|a|.
  const Integer bound = (isqrt(std::max(abs(a), abs(b))) + 2) * (4 + 4 * skip);
  int found = 0;
  auto try_pair = [&](const Integer& y, const Integer& z, ConicSolution& out) {
    Integer val = a * y * y + b * z * z;
    if (val < 0 || !is_square(val)) return false;
    Integer x = isqrt(val);
    Integer g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    if (g != 1) return false;
    if (found++ < skip) return false;
    out = {x, y, z};
    return true;
  };
  ConicSolution sol;
  for (Integer H = 1; H <= bound; ++H) {
    for (Integer y = 0; y <= H; ++y) {
      if (y == H) {
        if (y != 0 && try_pair(y, Integer(0), sol)) return sol;
        for (Integer z = 1; z <= H; ++z) {
          if (try_pair(y, z, sol)) return sol;
          if (try_pair(y, Integer(-z), sol)) return sol;
        }
      } else {
        if (try_pair(y, H, sol)) return sol;
        if (y != 0 && try_pair(y, Integer(-H), sol)) return sol;
      }
    }
  }
  throw Error(ErrorKind::InternalInconsistency,
              "no conic solution within the search box for (" + a.get_str() + "," + b.get_str() + ")");
}

namespace {

// Checks Definition-style minimal ramification of E(sqrt(t beta)) for one twist t.
bool check_twist(const Integer& a, const Integer& b, const ConicSolution& s, const Integer& t,
                 const std::vector<Integer>& odd_primes, std::vector<std::string>& cert, bool& case_c) {
  cert.clear();
  const Rational tx = Rational(t * s.x), ty = Rational(t * s.y), tz = Rational(t * s.z);
  const Integer da = field_discriminant(a), db = field_discriminant(b);
  Integer g;
  mpz_gcd(g.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
  // (a) odd primes outside gcd(D(a), D(b)): even valuation of t*beta above l in E
  for (const auto& l : odd_primes) {
    if (g % l == 0) continue;
    if (b % l == 0 && a % l != 0) {
      cert.push_back("(a) " + l.get_str() + ": ramified in E/Q(sqrt a), automatic");
      continue;
    }
    bool ok = with_prec([&](int n) {
      for (const auto& emb : completions(l, a, tx, ty, n)) {
        if (emb.field.valuation(emb.elem) % 2 != 0) return false;
      }
      return true;
    });
    if (!ok) return false;
    cert.push_back("(a) " + l.get_str() + ": even valuation");
  }
  // (b) and (c) at 2
  const long ma = mod8(da), mb = mod8(db);
  const bool cond_b = ((da % 2 != 0) && (db % 2 != 0)) || ma == 1 || mb == 1;
  case_c = (ma == 4 && mb == 5) || (ma == 5 && mb == 4);
  if (cond_b) {
    bool ok = with_prec([&](int n) {
      if (mod8(a) == 1) {
        for (int sign : {1, -1}) {
          Rational val = tx + ty * Rational(root_approx(a, 2, n, sign));
          LElem e{val, 0, n + (ty == 0 ? kExact : valuation(ty, Integer(2)))};
          if (ty == 0) e.prec = kExact;
          LocalField L = mod8(b) == 1 ? LocalField::base(2) : LocalField::quadratic(2, b);
          if (!L.unramified_sqrt(e)) return false;
        }
        return true;
      }
      if (mod8(b) == 1) {
        for (int sign : {1, -1}) {
          Rational val = 2 * tx + 2 * tz * Rational(root_approx(b, 2, n, sign));
          LElem e{val, 0, n + 1 + valuation(tz, Integer(2))};
          LocalField L = LocalField::quadratic(2, a);
          if (!L.unramified_sqrt(e)) return false;
        }
        return true;
      }
      LocalField L = LocalField::quadratic(2, a);
      return L.unramified_sqrt(LElem{tx, ty, kExact});
    });
    if (!ok) return false;
    cert.push_back("(b) 2: unramified");
  } else if (case_c) {
    const bool s_is_a = ma == 4;
    const Integer& sv = s_is_a ? a : b;
    LElem gamma = s_is_a ? LElem{tx, ty, kExact} : LElem{2 * tx, 2 * tz, kExact};
    LocalField L = LocalField::quadratic(2, sv);
    int v = 0;
    LElem u = L.unit_part(gamma, &v);
    if (v % 2 != 0 || !L.is_square_mod(u, 3)) return false;
    cert.push_back("(c) 2: conductor divides 2 over Q2(sqrt " + sv.get_str() + ")");
  } else {
    cert.push_back("2: no condition");
  }
  return true;
}

}  // namespace

MinRamData minimal_ramification_twist(const Integer& a, const Integer& b, const ConicSolution& sol) {
  std::vector<Integer> support{2};
  for (const Integer& n : {a, b, sol.y}) {
    if (n == 0) continue;
    for (const auto& p : factor(n).primes()) support.push_back(p);
  }
  std::vector<Integer> checked = support;
  if (sol.z != 0) {
    for (const auto& p : factor(sol.z).primes()) checked.push_back(p);
  }
  auto uniq = [](std::vector<Integer>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(support);
  uniq(checked);
  std::vector<Integer> odd;
  for (const auto& p : checked) {
    if (p != 2) odd.push_back(p);
  }
  std::vector<Integer> products;
  const std::size_t k = support.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Integer t = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) t *= support[i];
    }
    products.push_back(t);
  }
  std::sort(products.begin(), products.end());
  MinRamData mr;
  mr.a = a;
  mr.b = b;
  mr.sol = sol;
  for (const auto& p : products) {
    for (const Integer& t : {p, Integer(-p)}) {
      std::vector<std::string> cert;
      bool case_c = false;
      if (check_twist(a, b, sol, t, odd, cert, case_c)) {
        mr.t = t;
        mr.alpha = QuadElem(Rational(2 * t * sol.x), Rational(2 * t * sol.z), b);
        mr.beta = QuadElem(Rational(t * sol.x), Rational(t * sol.y), a);
        mr.case_c = case_c;
        mr.certificate = std::move(cert);
        mr.certificate.insert(mr.certificate.begin(), twist_label(t));
        return mr;
      }
    }
  }
  throw Error(ErrorKind::TwistSearchExhausted, "no minimally ramified twist for (" + a.get_str() + "," + b.get_str() + ")");
}

Contribution artin_contribution(const MinRamData& mr, const Integer& q) {
  Contribution c;
  if (q == 0) {
    c.place = Place::real();
    if (mr.a < 0 || mr.b < 0) throw Error(ErrorKind::NotDefined, "infinite place needs a, b > 0");
    BitVec cls = LocalField::real(mr.a).square_class(LElem{mr.beta.x, mr.beta.y, kExact});
    c.value = cls.get(0) ? -1 : 1;
    return c;
  }
  c.place = Place::finite(q);
  const bool a_split = splitting_of(mr.a, q) == Split::Split;
  const bool b_split = splitting_of(mr.b, q) == Split::Split;
  if (!a_split && !b_split) throw Error(ErrorKind::NotDefined, q.get_str() + " splits in neither quadratic field");
  const QuadElem& gamma = a_split ? mr.beta : mr.alpha;
  const Integer& s = a_split ? mr.a : mr.b;
  const Integer& other = a_split ? mr.b : mr.a;
  const LocalField Q = LocalField::base(q);
  const BitVec other_cls = Q.square_class(LElem::of(Rational(other)));
  int values[2];
  for (int i = 0; i < 2; ++i) {
    const int sign = i == 0 ? 1 : -1;
    BitVec cls = with_prec([&](int n) {
      LElem e = LElem::of(gamma.x);
      if (gamma.y != 0) e = LElem{gamma.x + gamma.y * Rational(root_approx(s, q, n, sign)), 0, n + valuation(gamma.y, q)};
      return Q.square_class(e);
    });
    if (cls.get(0) && !other_cls.get(0)) {
      throw Error(ErrorKind::InternalInconsistency, "twisted extension ramified at " + q.get_str());
    }
    values[i] = (cls.is_zero() || cls == other_cls) ? 1 : -1;
  }
  if (values[0] != values[1]) throw Error(ErrorKind::InternalInconsistency, "Artin symbol depends on the prime above " + q.get_str());
  c.value = values[0];
  // independent evaluator: X^4 - 2uX^2 + (u^2 - s v^2) has a root mod q
  if (q != 2 && q < 100000 && mr.a % q != 0 && mr.b % q != 0) {
    const Rational nrm = gamma.norm();
    if (gamma.x.get_den() % q != 0 && gamma.y.get_den() % q != 0 && valuation(nrm, q) == 0) {
      Integer u = residue(gamma.x, q), v = residue(gamma.y, q);
      bool root = has_root_mod(q, 1, Integer(-2 * u), Integer(u * u - s * v * v));
      if (root != (c.value == 1)) {
        throw Error(ErrorKind::InternalInconsistency, "quartic cross-check disagrees at " + q.get_str());
      }
      c.cross_checked = true;
    }
  }
  return c;
}

RedeiCertificate redei_symbol(const Integer& a_in, const Integer& b_in, const Integer& c_in, int conic_skip) {
  RedeiCertificate cert;
  cert.a = squarefree_part(a_in);
  cert.b = squarefree_part(b_in);
  cert.c = squarefree_part(c_in);
  if (cert.a == 1 || cert.b == 1 || cert.c == 1) {
    cert.trivial = true;
    cert.value = 1;
    return cert;
  }
  Admissibility adm = admissible(cert.a, cert.b, cert.c);
  if (!adm.ok) {
    std::string msg = "[" + cert.a.get_str() + "," + cert.b.get_str() + "," + cert.c.get_str() + "]";
    for (const auto& f : adm.failures) msg += "; " + f;
    throw Error(ErrorKind::NotDefined, msg);
  }
  ConicSolution sol = solve_conic(cert.a, cert.b, conic_skip);
  cert.min_ram = minimal_ramification_twist(cert.a, cert.b, sol);
  for (const auto& q : factor(cert.c).primes()) {
    cert.contributions.push_back(artin_contribution(cert.min_ram, q));
  }
  if (cert.c < 0) cert.contributions.push_back(artin_contribution(cert.min_ram, Integer(0)));
  for (const auto& c : cert.contributions) cert.value *= c.value;
  return cert;
}

}  // namespace redei
