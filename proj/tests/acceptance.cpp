// One line per acceptance criterion, PASS or FAIL, with the evidence indented
// below it.  Three criteria fail for reasons recorded in the decisions ledger;
// they are listed in kDocumentedFailures and still print FAIL.  The exit code
// is nonzero when any other criterion fails or a documented failure changes.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "redei/errors.hpp"
#include "redei/family.hpp"
#include "redei/localdescent.hpp"
#include "redei/points.hpp"
#include "redei/redei_symbol.hpp"
#include "redei/selmer.hpp"

using namespace redei;

namespace {

// 7: the sixteen-row list names 557, which is 5 mod 8, so [2,2,557] is undefined.
// 8: 89 splits completely in Q(2^(1/4)) (5^4 = 2 mod 89) and its table row has
//    dimension 6, so no rank-0 statement applies and the bound is 2.
// 9: delta(P) computed from P is (2,p,1,-p,-2), not the printed (2,p,1,p,2).
// 11: every quotient curve has a 2-Selmer rank bound of 2 (Sha[2] is nontrivial).
const std::set<int> kDocumentedFailures{7, 8, 9, 11};

struct Verdict {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
  }
  void note(const std::string& what) { details.push_back("      " + what); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::string vec_str(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::optional<int> symbol_if_defined(const Integer& a, const Integer& b, const Integer& c) {
  try {
    return redei_value(a, b, c);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotDefined) return std::nullopt;
    throw;
  }
}

Verdict criterion1() {
  Verdict v;
  const std::vector<std::pair<long, int>> table{{73, 8}, {5, 5}, {11, 5}, {13, 5}, {19, 5}, {7, 4}, {17, 6}, {23, 6}};
  for (const auto& [p, dim] : table) {
    auto t0 = Clock::now();
    const int got = selmer_dim_Jp_over_Q(p);
    const double s = seconds_since(t0);
    v.check(got == dim && s <= 10.0, "dim S2(J_" + std::to_string(p) + "/Q) = " + std::to_string(got) + " (want " +
                                         std::to_string(dim) + ") in " + fmt_seconds(s));
  }
  return v;
}

Verdict criterion2() {
  Verdict v;
  DescentProblem prob = descent_over_q(QuinticModel::scaled(1));
  v.check(selmer_group(prob).dim == 4, "dim S2(J/Q) = " + std::to_string(selmer_group(prob).dim));
  const LocalField Q3 = LocalField::base(3);
  std::vector<LElem> x;
  for (long e : {1L, 2L, -1L, 6L, -3L}) x.push_back(LElem::of(e));
  const bool member = membership(cached_local_image(QuinticModel::scaled(1), Q3), local_vector(Q3, x));
  v.check(!member, "(1,2,-1,6,-3) is not in im(delta_3)");
  return v;
}

Verdict criterion3() {
  Verdict v;
  const QuinticModel C = QuinticModel::scaled(1);
  // r = 1 + i over Q_3(i); the field is Q_3(sqrt(-1)).
  const std::map<std::string, LElem> sym{{"1", LElem::of(1)}, {"3", LElem::of(3)}, {"r", LElem{1, 1}}, {"3r", LElem{3, 3}}};
  auto rows_of = [](const std::vector<std::vector<long>>& t) {
    std::vector<std::vector<LElem>> out;
    for (const auto& row : t) {
      std::vector<LElem> r;
      for (long x : row) r.push_back(LElem::of(x));
      out.push_back(r);
    }
    return out;
  };
  struct Table {
    std::string name;
    LocalField field;
    std::vector<std::vector<LElem>> rows;
  };
  std::vector<std::vector<LElem>> q3i;
  for (const auto& row : std::vector<std::vector<std::string>>{
           {"3", "1", "1", "3", "1"}, {"1", "3", "1", "1", "3"}, {"r", "r", "1", "r", "r"}, {"3r", "1", "1", "3r", "1"}}) {
    std::vector<LElem> r;
    for (const auto& s : row) r.push_back(sym.at(s));
    q3i.push_back(r);
  }
  const std::vector<Table> tables{
      {"Q_2", LocalField::base(2),
       rows_of({{6, -1, -2, -3, -1}, {1, -6, -1, -2, -3}, {2, 1, 1, -1, -2}, {3, 2, 1, -6, -1}, {2, -1, 6, -3, 1},
                {1, 2, -1, 6, -3}})},
      {"Q_3", LocalField::base(3), rows_of({{-3, -1, 1, -3, -1}, {1, 3, -1, 1, -3}, {-1, 1, 1, -1, 1}, {1, -3, -1, 1, 3}})},
      {"Q_3(i)", LocalField::unramified(3), q3i},
      {"R", LocalField::real(), rows_of({{1, -1, -1, -1, -1}, {1, 1, 1, -1, -1}})},
  };
  for (const auto& t : tables) {
    const LocalImage& img = cached_local_image(C, t.field);
    const std::size_t cols = 5 * t.field.class_dim();
    Gf2Matrix table(cols), both(cols);
    for (const auto& r : t.rows) {
      table.add_row(local_vector(t.field, r));
      both.add_row(local_vector(t.field, r));
    }
    for (const auto& b : img.basis) both.add_row(b);
    const int dt = table.rank(), di = Gf2Matrix(img.basis, cols).rank(), du = both.rank();
    v.check(dt == di && du == dt, t.name + ": table span " + std::to_string(dt) + ", computed " + std::to_string(di) +
                                      ", joint " + std::to_string(du));
  }
  return v;
}

Verdict criterion4() {
  Verdict v;
  int tested = 0, mismatches = 0;
  for (long p : primes_up_to(5000)) {
    if (p % 8 != 7) continue;
    ++tested;
    if ((redei_value(2, 2, -p) == 1) != (p % 16 == 15)) {
      ++mismatches;
      v.note("mismatch at p = " + std::to_string(p));
    }
  }
  v.check(mismatches == 0 && tested > 100,
          "[2,2,-p] = 1 iff p = 15 mod 16: " + std::to_string(tested) + " primes, " + std::to_string(mismatches) + " mismatches");
  return v;
}

Verdict criterion5() {
  Verdict v;
  int tested = 0, bad_identity = 0, bad_dichotomy = 0;
  for (long p : primes_up_to(5000)) {
    if (p % 8 != 1) continue;
    ++tested;
    const int a = redei_value(2, p, p), b = redei_value(2, -2, p);
    if (a != b) ++bad_identity;
    // (b): 1 + i is a square mod p, read in F_p.
    const Integer i = sqrt_mod(Integer(p - 1), Integer(p));
    const bool square = jacobi(Integer(1 + i), Integer(p)) == 1;
    if (((a == 1) == square) != (p % 16 == 1)) ++bad_dichotomy;
  }
  v.check(bad_identity == 0, "[2,p,p] = [2,-2,p] on " + std::to_string(tested) + " primes, " +
                                 std::to_string(bad_identity) + " mismatches");
  v.check(bad_dichotomy == 0, "(a) and (b) agree iff p = 1 mod 16: " + std::to_string(bad_dichotomy) + " mismatches");
  return v;
}

Verdict criterion6() {
  Verdict v;
  std::vector<long> pool;
  for (long x : {2L, 3L, 5L, 7L, 11L, 13L}) pool.push_back(x);
  for (long p : primes_up_to(500))
    if (p > 13) pool.push_back(p);
  const std::size_t half = pool.size();
  for (std::size_t i = 0; i < half; ++i) pool.push_back(-pool[i]);
  pool.push_back(-1);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  int triples = 0, sym_violations = 0, lin_checks = 0, lin_violations = 0;
  while (triples < 200) {
    std::array<Integer, 3> t{pool[pick(rng)], pool[pick(rng)], pool[pick(rng)]};
    if (!admissible(t[0], t[1], t[2]).ok) continue;
    ++triples;
    const int val = redei_value(t[0], t[1], t[2]);
    std::array<int, 3> idx{0, 1, 2};
    do {
      if (redei_value(t[idx[0]], t[idx[1]], t[idx[2]]) != val) ++sym_violations;
    } while (std::next_permutation(idx.begin(), idx.end()));
    for (int slot = 0; slot < 3; ++slot) {
      for (int attempt = 0; attempt < 30; ++attempt) {
        const Integer x = pool[pick(rng)];
        auto u = t, w = t;
        u[slot] = x;
        w[slot] = squarefree_part(Integer(t[slot] * x));
        auto vx = symbol_if_defined(u[0], u[1], u[2]);
        auto vw = symbol_if_defined(w[0], w[1], w[2]);
        if (!vx || !vw) continue;
        ++lin_checks;
        if (*vw != val * *vx) ++lin_violations;
        break;
      }
    }
  }
  v.check(sym_violations == 0, "200 admissible triples, 6 permutations each: " + std::to_string(sym_violations) + " violations");
  v.check(lin_violations == 0 && lin_checks >= 300, "multiplicativity in each slot: " + std::to_string(lin_checks) +
                                                        " checks, " + std::to_string(lin_violations) + " violations");
  return v;
}

std::string symbols_str(const std::vector<SymbolValue>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + (s[i].value ? std::to_string(*s[i].value) : std::string("undefined"));
  return out + ")";
}

void table_rows(Verdict& v, int sign, const std::vector<std::pair<long, std::pair<int, std::vector<int>>>>& rows,
                double slow_limit, const std::set<long>& slow) {
  for (const auto& [p, want] : rows) {
    auto t0 = Clock::now();
    try {
      QuadSelmerResult r = selmer_J_over_quad(p, sign);
      const double s = seconds_since(t0);
      std::vector<int> got;
      bool defined = true;
      for (const auto& x : r.symbols) {
        defined = defined && x.value.has_value();
        got.push_back(x.value.value_or(0));
      }
      const double limit = slow.count(p) ? slow_limit : 10.0;
      v.check(defined && r.dim == want.first && got == want.second && s <= limit,
              "p = " + std::to_string(p) + ": dim " + std::to_string(r.dim) + " (want " + std::to_string(want.first) +
                  "), symbols " + symbols_str(r.symbols) + ", " + fmt_seconds(s));
    } catch (const Error& e) {
      v.check(false, "p = " + std::to_string(p) + ": " + e.what());
    }
  }
}

Verdict criterion7() {
  Verdict v;
  table_rows(v, -1, {{191, {6, {1, 1}}}, {47, {6, {1, -1}}}, {167, {4, {-1, 1}}}, {23, {4, {-1, -1}}}}, 10, {});
  table_rows(v, 1, {{113, {6, {1, 1}}}, {17, {4, {1, -1}}}, {41, {4, {-1, 1}}}, {89, {6, {-1, -1}}}}, 10, {});
  table_rows(v, 1,
             {{2593, {8, {1, 1, 1, 1}}},     {1153, {8, {1, 1, 1, -1}}},   {337, {4, {1, 1, -1, 1}}},
              {557, {4, {1, 1, -1, -1}}},    {433, {4, {1, -1, 1, 1}}},    {97, {4, {1, -1, 1, -1}}},
              {241, {6, {1, -1, -1, 1}}},    {193, {6, {1, -1, -1, -1}}},  {1321, {6, {-1, 1, 1, 1}}},
              {409, {6, {-1, 1, 1, -1}}},    {1129, {4, {-1, 1, -1, 1}}},  {313, {4, {-1, 1, -1, -1}}},
              {937, {6, {-1, -1, 1, 1}}},    {1033, {6, {-1, -1, 1, -1}}}, {73, {4, {-1, -1, -1, 1}}},
              {601, {4, {-1, -1, -1, -1}}}},
             60, {2593, 1321});
  // The row for 557 is read as 577 (1 mod 24, same symbols); reported, not counted.
  try {
    QuadSelmerResult r = selmer_J_over_quad(577, 1);
    v.note("577 (candidate for the 557 row): dim " + std::to_string(r.dim) + ", symbols " + symbols_str(r.symbols));
  } catch (const Error& e) {
    v.note(std::string("577: ") + e.what());
  }
  // Constancy per symbol class: 20 primes per class.
  for (long cls : {23L, 17L, 1L}) {
    std::map<std::vector<int>, std::set<int>> seen;
    int n = 0;
    for (long p : primes_up_to(100000)) {
      if (n == 20) break;
      if (p % 24 != cls) continue;
      QuadSelmerResult r = selmer_J_over_quad(p, cls == 23 ? -1 : 1);
      std::vector<int> key;
      for (const auto& s : r.symbols) key.push_back(s.value.value_or(0));
      seen[key].insert(r.dim);
      ++n;
    }
    bool constant = n == 20;
    for (const auto& [key, dims] : seen) constant = constant && dims.size() == 1;
    v.check(constant, "dimension constant per symbol class for p = " + std::to_string(cls) + " mod 24 (" +
                          std::to_string(n) + " primes, " + std::to_string(seen.size()) + " symbol classes)");
  }
  return v;
}

Verdict criterion8() {
  Verdict v;
  auto sha = [](const PrimeReport& r) { return r.sha2_dim ? std::to_string(*r.sha2_dim) : std::string("?"); };
  PrimeReport r23 = report(23);
  v.check(r23.rank_lower == 0 && r23.rank_upper == 0 && r23.sha2_dim == 2,
          "p = 23: rank " + std::to_string(r23.rank_upper) + ", Sha[2] dim " + sha(r23) + " [" + r23.theorem_applied + "]");
  PrimeReport r89 = report(89);
  const bool split89 = r89.quartic_splittings.at(to_string(QuarticField::FourthRootOfTwo));
  v.check(r89.rank_upper == 0 && r89.sha2_dim == 2 && 89 % 16 == 9 && !split89,
          "p = 89: rank " + std::to_string(r89.rank_upper) + ", Sha[2] dim " + sha(r89) +
              ", split in Q(2^(1/4)): " + (split89 ? "yes" : "no") + " [" + r89.theorem_applied + "]");
  PrimeReport r97 = report(97);
  v.check(r97.rank_upper == 0 && r97.sha2_dim == 4, "p = 97: rank " + std::to_string(r97.rank_upper) + ", Sha[2] dim " +
                                                         sha(r97) + " [" + r97.theorem_applied + "]");
  PrimeReport r7 = report(7);
  PointsResult pts7 = weierstrass_only(7);
  v.check(r7.rank_upper == 0 && r7.rational_points == 6 && pts7.complete && pts7.points.size() == 6,
          "p = 7: rank " + std::to_string(r7.rank_upper) + ", " + std::to_string(pts7.points.size()) + " rational points");
  return v;
}

Verdict criterion9() {
  Verdict v;
  const Integer p = 241;
  const QuinticModel model = QuinticModel::scaled(p);
  const MumfordDivisor P = divisor_P241(), Q = divisor_Q241();
  v.check(mumford_valid(P, model) && mumford_valid(Q, model), "P and Q are valid Mumford pairs on C_241");
  const auto dP = delta_mumford(P, model), dQ = delta_mumford(Q, model);
  v.check(dP == ints({2, 241, 1, 241, 2}), "delta(P) = " + vec_str(dP) + " (printed (2,241,1,241,2))");
  v.check(dQ == ints({1, 241, 241, 241, 241}), "delta(Q) = " + vec_str(dQ));
  const int lower = rank_lower_bound({dP, dQ}, torsion_delta(model));
  v.check(lower == 2, "rank lower bound " + std::to_string(lower));
  const int selQ = selmer_dim_Jp_over_Q(p), selK = selmer_dim_J_over_quad(p, 1);
  v.check(selQ == 8, "dim S2(J_241/Q) = " + std::to_string(selQ));
  v.check(selK == 6, "dim S2(J/Q(sqrt 241)) = " + std::to_string(selK));
  const int upper = std::min(selQ, selK) - 4;
  const int sha = selQ - 4 - lower;
  v.check(lower == upper && sha == 2, "rank exactly " + std::to_string(lower) + " and Sha[2] dim " + std::to_string(sha));
  PrimeReport r = report(p, lower);
  v.check(r.sha2_dim == 2, "report(241) with the divisors: Sha[2] dim " + (r.sha2_dim ? std::to_string(*r.sha2_dim) : "?"));
  return v;
}

Verdict criterion10() {
  Verdict v;
  const QuinticModel model = QuinticModel::scaled(241);
  ConicCheck c = conic_obstruction(TwoCover{ints({2, 241, 1, 241, 2})}, model, 1, 4);
  v.check(c.a == 2 && c.b == -241 && c.c == 723, "conic " + c.a.get_str() + "y^2 + " + c.b.get_str() + "z^2 = " + c.c.get_str());
  for (long l : {2L, 3L}) {
    bool hilb_insoluble = false, brute_insoluble = false;
    const bool hilbert_route = hilbert(Rational(c.a * c.c), Rational(c.b * c.c), Place::finite(l)) == -1;
    for (const auto& pv : c.places) {
      if (pv.place == Place::finite(l)) {
        hilb_insoluble = !pv.solvable;
        brute_insoluble = pv.brute_force.has_value() && !*pv.brute_force;
      }
    }
    const bool direct_brute = !conic_solvable_bruteforce(c.a, c.b, c.c, l);
    v.check(hilb_insoluble && hilbert_route && brute_insoluble && direct_brute,
            "insoluble over Q_" + std::to_string(l) + " by Hilbert symbol and by search modulo " + std::to_string(l) + "^k");
  }
  return v;
}

Verdict criterion11() {
  Verdict v;
  for (const auto& E : elliptic_quotients(241)) {
    DescentCertificate d = elliptic_two_descent(E);
    v.check(d.certified(), E.name + ": " + E.equation() + ", Selmer dim " + std::to_string(d.selmer_dim) +
                               ", rank bound " + std::to_string(d.rank_bound));
  }
  try {
    PointsResult r = weierstrass_only(241);
    v.check(r.complete && r.points.size() == 6, "weierstrass_only(241): " + std::to_string(r.points.size()) + " points");
  } catch (const Error& e) {
    v.check(false, std::string("weierstrass_only(241): ") + e.what());
  }
  PointsResult partial = points_certificate(241);
  for (const auto& link : partial.chain) v.note(std::string(link.ok ? "[ok] " : "[open] ") + link.claim);
  return v;
}

Verdict criterion12() {
  Verdict v;
  for (long p : {7L, 11L, 241L}) {
    Integer n = count_jacobian(QuinticModel::scaled(p), 5).jacobian_order;
    v.check(n == 16, "#J_" + std::to_string(p) + "(F_5) = " + n.get_str());
  }
  Integer n7 = count_jacobian(QuinticModel::scaled(5), 7).jacobian_order;
  Integer n11 = count_jacobian(QuinticModel::scaled(5), 11).jacobian_order;
  v.check(n7 == 48, "#J_5(F_7) = " + n7.get_str());
  v.check(n11 == 128, "#J_5(F_11) = " + n11.get_str());
  for (long p : {5L, 7L, 23L, 241L}) {
    TorsionCert t = torsion_structure(p);
    v.check(t.structure == "(Z/2)^4", "J_" + std::to_string(p) + "(Q)_tors = " + t.structure);
  }
  return v;
}

bool small_solution(long a, long b) {
  for (long y = 0; y <= 50; ++y) {
    for (long z = 0; z <= 50; ++z) {
      if (!y && !z) continue;
      const long r = a * y * y + b * z * z;
      if (r >= 0 && is_square(Integer(r))) return true;
    }
  }
  return false;
}

Verdict criterion13() {
  Verdict v;
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  int product_violations = 0;
  for (int i = 0; i < 500;) {
    const long a = dist(rng), b = dist(rng);
    if (!a || !b) continue;
    ++i;
    int prod = 1;
    for (const auto& w : hilbert_support(a, b)) prod *= hilbert(a, b, w);
    product_violations += prod != 1;
  }
  v.check(product_violations == 0, "product formula on 500 random pairs: " + std::to_string(product_violations) + " violations");

  int oracle_violations = 0, pairs = 0;
  for (long a = -50; a <= 50; ++a) {
    for (long b = -50; b <= 50; ++b) {
      if (!a || !b || squarefree_part(Integer(a)) != a || squarefree_part(Integer(b)) != b) continue;
      ++pairs;
      bool everywhere = true;
      for (const auto& w : hilbert_support(a, b)) everywhere = everywhere && hilbert(a, b, w) == 1;
      oracle_violations += everywhere != small_solution(a, b);
    }
  }
  v.check(oracle_violations == 0, "Hilbert symbols against small solutions, squarefree |a|,|b| <= 50: " +
                                      std::to_string(pairs) + " pairs, " + std::to_string(oracle_violations) + " violations");

  int unit_violations = 0, class_violations = 0, units = 0, fields = 0;
  for (long p : primes_up_to(10000)) {
    if (p == 2) continue;
    const long d = p % 4 == 1 ? p : -p;
    QuadField K = QuadField::make(d);
    ++fields;
    class_violations += K.class_number() % 2 == 0;
    if (d > 0) {
      ++units;
      unit_violations += K.fundamental_unit()->norm() != -1;
    }
  }
  v.check(unit_violations == 0, "fundamental unit of norm -1 for p = 1 mod 4: " + std::to_string(units) + " fields, " +
                                    std::to_string(unit_violations) + " violations");
  v.check(class_violations == 0, "odd class number of Q(sqrt p*): " + std::to_string(fields) + " fields, " +
                                     std::to_string(class_violations) + " violations");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"Selmer dimensions of J_p over Q", criterion1},
      {"Selmer dimension of J over Q and the 3-adic test", criterion2},
      {"local image tables over Q_2, Q_3, Q_3(i), R", criterion3},
      {"congruence law for [2,2,-p]", criterion4},
      {"[2,p,p] = [2,-2,p] and the 1 + i dichotomy", criterion5},
      {"symmetry and multiplicativity on random triples", criterion6},
      {"quadratic-field Selmer tables", criterion7},
      {"reports for 23, 89, 97, 7", criterion8},
      {"rank and Sha[2] of J_241", criterion9},
      {"conic obstruction for the printed delta(P)", criterion10},
      {"elliptic quotients and the points of C_241", criterion11},
      {"reduction counts and torsion", criterion12},
      {"arithmetic property suites", criterion13},
  };
  int passed = 0, failed = 0, unexpected = 0;
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const double s = seconds_since(t0);
    const bool documented = kDocumentedFailures.count(id) > 0;
    if (v.pass) ++passed;
    else ++failed;
    if (v.pass == documented) ++unexpected;
    char head[160];
    std::snprintf(head, sizeof head, "criterion %2d %s  %s (%s)%s", id, v.pass ? "PASS" : "FAIL",
                  criteria[i].first.c_str(), fmt_seconds(s).c_str(),
                  documented ? (v.pass ? "  [documented failure now passes]" : "  [documented failure]") : "");
    std::cout << head << '\n';
    for (const auto& d : v.details) std::cout << "    " << d << '\n';
    std::cout << std::flush;
  }
  std::cout << "summary: " << passed << " PASS, " << failed << " FAIL (" << kDocumentedFailures.size()
            << " documented), " << unexpected << " unexpected\n";
  return unexpected == 0 ? 0 : 1;
}
