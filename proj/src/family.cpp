#include "redei/family.hpp"

#include <algorithm>
#include <cmath>

#include "redei/errors.hpp"
#include "redei/redei_symbol.hpp"

namespace redei {

namespace {

using i64 = long long;

i64 md(i64 a, i64 q) {
  a %= q;
  return a < 0 ? a + q : a;
}

// a + b t with t^2 = n in F_q[t].
struct Fq2 {
  i64 a, b;
};

Fq2 mul(const Fq2& x, const Fq2& y, i64 n, i64 q) {
  return {md(x.a * y.a % q + x.b * y.b % q * n, q), md(x.a * y.b + x.b * y.a, q)};
}

}  // namespace

ZetaCount count_jacobian(const QuinticModel& model, const Integer& qz) {
  if (qz < 3 || !is_prime(qz) || !qz.fits_slong_p() || qz > 46340)
    throw Error(ErrorKind::InvalidArgument, "count_jacobian needs an odd prime q < 46341");
  const i64 q = qz.get_si();
  std::vector<i64> r;
  for (const auto& a : model.roots) r.push_back(Integer(residue(Rational(a), qz)).get_si());
  for (int i = 0; i < model.k(); ++i) {
    for (int j = i + 1; j < model.k(); ++j) {
      if (r[i] == r[j]) throw Error(ErrorKind::BadReduction, "q = " + qz.get_str() + " divides the discriminant");
    }
  }
  std::vector<int> chi(q, -1);
  chi[0] = 0;
  for (i64 x = 1; x < q; ++x) chi[x * x % q] = 1;
  i64 n = 2;
  while (chi[n] != -1) ++n;

  i64 N1 = 1;
  for (i64 x = 0; x < q; ++x) {
    i64 f = 1;
    for (i64 a : r) f = f * md(x - a, q) % q;
    N1 += 1 + chi[f];
  }
  const int g = model.genus();
  i64 N2 = 1;
  for (i64 a = 0; a < q && g > 1; ++a) {
    for (i64 b = 0; b < q; ++b) {
      Fq2 f{1, 0};
      for (i64 root : r) f = mul(f, Fq2{md(a - root, q), b}, n, q);
      // f is a square in F_{q^2} iff its norm is a square in F_q.
      i64 N = md(f.a * f.a % q - n * (f.b * f.b % q), q);
      N2 += 1 + (N == 0 ? 0 : chi[N]);
    }
  }
  ZetaCount z;
  z.q = qz;
  z.points_q = Integer(static_cast<long>(N1));
  if (g > 1) {
    z.points_q2 = Integer(static_cast<long>(N2));
    z.jacobian_order = (z.points_q * z.points_q + z.points_q2) / 2 - qz;
  } else {
    z.jacobian_order = z.points_q;
  }
  const double lo = std::pow(std::sqrt(static_cast<double>(q)) - 1, 2 * g), hi = std::pow(std::sqrt(static_cast<double>(q)) + 1, 2 * g);
  const double J = z.jacobian_order.get_d();
  if (J < lo - 1e-6 || J > hi + 1e-6)
    throw Error(ErrorKind::InternalInconsistency, "#J(F_" + qz.get_str() + ") outside the Weil bounds");
  return z;
}

TorsionCert torsion_structure(const Integer& p) {
  TorsionCert c;
  const QuinticModel model = QuinticModel::scaled(p);
  std::vector<Integer> qs = (p == 5 || p == 7) ? std::vector<Integer>{11, 13} : std::vector<Integer>{5, 7};
  c.gcd = 0;
  auto use = [&](const Integer& q) {
    ZetaCount z = count_jacobian(model, q);
    c.counts.emplace_back(q, z.jacobian_order);
    mpz_gcd(c.gcd.get_mpz_t(), c.gcd.get_mpz_t(), z.jacobian_order.get_mpz_t());
  };
  for (const auto& q : qs) use(q);
  // Further good primes only if the first two leave room above J[2].
  for (Integer q = 11; c.gcd != 16 && q < 200; q = next_prime(q)) {
    if (q == p || std::find(qs.begin(), qs.end(), q) != qs.end()) continue;
    use(q);
  }
  if (c.gcd % 16 != 0) throw Error(ErrorKind::InternalInconsistency, "rational 2-torsion does not reduce injectively");
  if (c.gcd != 16) throw Error(ErrorKind::Inconclusive, "gcd of #J(F_q) stays at " + c.gcd.get_str());
  c.structure = "(Z/2)^4";
  return c;
}

std::string to_string(QuarticField f) {
  return f == QuarticField::FourthRootOfTwo ? "Q(2^(1/4))" : "Q(sqrt(1+sqrt(3)))";
}

int quartic_roots_mod(const Integer& pz, QuarticField f) {
  if (!pz.fits_slong_p() || pz > Integer("3037000499")) throw Error(ErrorKind::InvalidArgument, "p too large for root count");
  const i64 p = pz.get_si();
  int roots = 0;
  for (i64 x = 0; x < p; ++x) {
    i64 x2 = x * x % p, x4 = x2 * x2 % p;
    i64 v = f == QuarticField::FourthRootOfTwo ? x4 - 2 : x4 - 2 * x2 - 2;
    if (md(v, p) == 0) ++roots;
  }
  return roots;
}

SplitCert splits_in_quartic(const Integer& p, QuarticField f) {
  SplitCert c;
  if (f == QuarticField::FourthRootOfTwo) {
    if (p % 8 != 1) throw Error(ErrorKind::InvalidArgument, "needs p = 1 mod 8");
    c.symbol_route = redei_value(2, 2, p) * redei_value(2, -1, p);
  } else {
    if (p % 24 != 1) throw Error(ErrorKind::InvalidArgument, "needs p = 1 mod 24");
    c.symbol_route = redei_value(3, -2, p);
  }
  c.roots_mod_p = quartic_roots_mod(p, f);
  c.splits = c.roots_mod_p == 4;
  if (c.splits != (c.symbol_route == 1))
    throw Error(ErrorKind::InternalInconsistency, "splitting of " + p.get_str() + " in " + to_string(f) +
                                                      ": symbols and root count disagree");
  return c;
}

PrimeReport report(const Integer& p, int rank_lower_known, int field_sign) {
  if (p <= 3 || !is_prime(p)) throw Error(ErrorKind::InvalidArgument, "p must be a prime > 3");
  PrimeReport R;
  R.p = p;
  for (long m : {8L, 16L, 24L, 48L}) R.classes["mod" + std::to_string(m)] = Integer(p % m).get_si();
  const long r24 = R.classes["mod24"], r48 = R.classes["mod48"];

  R.dim_S2_Jp_Q = selmer_dim_Jp_over_Q(p);
  R.torsion = torsion_structure(p).structure;

  int sign = (r24 == 1 || r24 == 17) ? 1 : r24 == 23 ? -1 : (p % 4 == 1 ? 1 : -1);
  if (field_sign != 0) sign = field_sign > 0 ? 1 : -1;
  R.quad_field = sign > 0 ? "Q(sqrt(p))" : "Q(sqrt(-p))";
  QuadSelmerResult qs = selmer_J_over_quad(p, sign);
  R.dim_S2_J_quad = qs.dim;
  R.symbols = qs.symbols;
  for (const auto& n : qs.problem.notes) R.notes.push_back(n);

  if (r24 == 1 || r24 == 17) R.quartic_splittings[to_string(QuarticField::FourthRootOfTwo)] =
      splits_in_quartic(p, QuarticField::FourthRootOfTwo).splits;
  if (r24 == 1) R.quartic_splittings[to_string(QuarticField::SqrtOnePlusSqrtThree)] =
      splits_in_quartic(p, QuarticField::SqrtOnePlusSqrtThree).splits;

  const int sel = R.dim_S2_Jp_Q - 4;
  R.rank_lower = rank_lower_known;
  // rank J_p(Q) + rank J(Q) = rank J(K) with rank J(Q) = 0.
  R.rank_upper = std::min(sel, *R.dim_S2_J_quad - 4);
  if (R.rank_lower > R.rank_upper)
    throw Error(ErrorKind::InternalInconsistency, "rank lower bound exceeds the Selmer bound");

  R.theorem_applied = "none";
  bool rank_zero_theorem = false;
  if (r24 == 7) {
    R.theorem_applied = "rank0-7mod24";
    R.hypothesis = "p = 7 mod 24";
    rank_zero_theorem = true;
  } else if (r48 == 23) {
    R.theorem_applied = "rank0-23mod48";
    R.hypothesis = "p = 23 mod 48";
    rank_zero_theorem = true;
  } else if (r24 == 17 && !R.quartic_splittings.at(to_string(QuarticField::FourthRootOfTwo))) {
    R.theorem_applied = "rank0-17mod24";
    R.hypothesis = "p = 17 mod 24, not split completely in Q(2^(1/4))";
    rank_zero_theorem = true;
  } else if (r24 == 1) {
    bool s4 = R.quartic_splittings.at(to_string(QuarticField::FourthRootOfTwo));
    bool s3 = R.quartic_splittings.at(to_string(QuarticField::SqrtOnePlusSqrtThree));
    if (s4 && !s3) {
      R.hypothesis = "(a) split in Q(2^(1/4)), not in Q(sqrt(1+sqrt(3)))";
    } else if (r48 == 1 && s3 && !s4) {
      R.hypothesis = "(b) p = 1 mod 48, split in Q(sqrt(1+sqrt(3))), not in Q(2^(1/4))";
    } else if (r48 == 25 && !s3 && !s4) {
      R.hypothesis = "(c) p = 25 mod 48, split in neither quartic field";
    }
    if (!R.hypothesis.empty()) {
      R.theorem_applied = "rank0-1mod24";
      rank_zero_theorem = true;
    }
  } else if (r24 == 5 || r24 == 11 || r24 == 13 || r24 == 19) {
    R.theorem_applied = "parity-odd";
    R.hypothesis = "p = 5, 11, 13, 19 mod 24";
    R.conditional_rank = 1;
    R.notes.push_back("conditional_rank assumes Sha finite");
  }
  if (rank_zero_theorem && R.rank_upper != 0)
    throw Error(ErrorKind::InternalInconsistency, "theorem " + R.theorem_applied + " applies but the Selmer bound is " +
                                                      std::to_string(R.rank_upper));

  if (R.rank_lower == R.rank_upper) {
    R.sha2_dim = sel - R.rank_lower;
    R.sha2_lower = R.sha2_upper = *R.sha2_dim;
    if (*R.sha2_dim % 2 != 0) throw Error(ErrorKind::InternalInconsistency, "odd Sha[2] dimension");
    if (R.rank_lower == 0) R.rational_points = 6;
  } else {
    R.sha2_lower = sel - R.rank_upper;
    R.sha2_upper = sel - R.rank_lower;
    R.notes.push_back("rank and Sha[2] not determined; interval only");
  }

  // delta(D_p) from the completion rule; one printed copy of this row ends in -2p.
  auto row = weierstrass_row(QuinticModel::scaled(p), 3);
  std::string s = "delta(D_p) = (";
  for (std::size_t j = 0; j < row.size(); ++j) s += (j ? "," : "") + row[j].get_str();
  R.notes.push_back(s + ") by the completion rule; a printed variant ending in -2p differs from it by the class of 2");
  return R;
}

}  // namespace redei
