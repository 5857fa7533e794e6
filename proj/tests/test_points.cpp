#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "redei/errors.hpp"
#include "redei/points.hpp"

using namespace redei;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

std::vector<Integer> product(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> out;
  for (std::size_t j = 0; j < a.size(); ++j) out.push_back(squarefree_part(Integer(a[j] * b[j])));
  return out;
}

}  // namespace

TEST_CASE("the divisors P and Q on C_241") {
  const QuinticModel model = QuinticModel::scaled(241);
  CHECK(mumford_valid(divisor_P241(), model));
  CHECK(mumford_valid(divisor_Q241(), model));
  CHECK(delta_mumford(divisor_P241(), model) == ints({2, 241, 1, -241, -2}));
  CHECK(delta_mumford(divisor_Q241(), model) == ints({1, 241, 241, 241, 241}));
  CHECK(known_divisor_rank(241) == 2);
  CHECK(known_divisor_rank(23) == 0);

  MumfordDivisor broken = divisor_P241();
  broken.v[0] += 1;
  CHECK_FALSE(mumford_valid(broken, model));
  CHECK_THROWS_AS(delta_mumford(broken, model), Error);
}

TEST_CASE("delta is a homomorphism on J[2]") {
  for (long p : {1L, 7L, 241L}) {
    const QuinticModel model = QuinticModel::scaled(p);
    for (int i = 0; i < 5; ++i) {
      MumfordDivisor Di{{Rational(-model.roots[i]), Rational(1)}, {}};
      CHECK(delta_mumford(Di, model) == weierstrass_row(model, i));
      for (int j = i + 1; j < 5; ++j) {
        const Rational a = model.roots[i], b = model.roots[j];
        MumfordDivisor D{{a * b, -(a + b), Rational(1)}, {}};
        REQUIRE(mumford_valid(D, model));
        CHECK(delta_mumford(D, model) == product(weierstrass_row(model, i), weierstrass_row(model, j)));
      }
    }
  }
}

TEST_CASE("rank lower bound counts independence modulo torsion") {
  const QuinticModel model = QuinticModel::scaled(241);
  const TorsionImage T = torsion_delta(model);
  CHECK(rank_lower_bound({}, T) == 0);
  CHECK(rank_lower_bound({weierstrass_row(model, 0)}, T) == 0);
  const auto dP = delta_mumford(divisor_P241(), model), dQ = delta_mumford(divisor_Q241(), model);
  CHECK(rank_lower_bound({dP}, T) == 1);
  CHECK(rank_lower_bound({dP, dQ, product(dP, dQ)}, T) == 2);
}

TEST_CASE("conic solvability: brute force against Hilbert symbols on random conics") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> dist(-60, 60);
  int conics = 0;
  while (conics < 50) {
    long a = dist(rng), b = dist(rng), c = dist(rng);
    if (a == 0 || b == 0 || c == 0) continue;
    ++conics;
    for (long l : {2L, 3L, 5L, 7L, 11L, 13L}) {
      // a Y^2 + b Z^2 = c W^2 is solvable iff (ac, bc)_l = 1.
      const bool hilb = hilbert(Rational(a * c), Rational(b * c), Place::finite(l)) == 1;
      CHECK_MESSAGE(conic_solvable_bruteforce(a, b, c, l) == hilb, a << "," << b << "," << c << " at " << l);
    }
  }
  CHECK_THROWS_AS(conic_solvable_bruteforce(1, 1, 1, 17), Error);
}

TEST_CASE("the printed conic for delta(P) is obstructed at 2 and 3") {
  const QuinticModel model = QuinticModel::scaled(241);
  ConicCheck printed = conic_obstruction(TwoCover{ints({2, 241, 1, 241, 2})}, model, 1, 4);
  CHECK(printed.a == 2);
  CHECK(printed.b == -241);
  CHECK(printed.c == 723);
  REQUIRE(printed.obstructed.size() >= 2);
  CHECK(std::find(printed.obstructed.begin(), printed.obstructed.end(), Place::finite(2)) != printed.obstructed.end());
  CHECK(std::find(printed.obstructed.begin(), printed.obstructed.end(), Place::finite(3)) != printed.obstructed.end());
  for (const auto& v : printed.places)
    if (v.brute_force) CHECK(*v.brute_force == v.solvable);

  ConicCheck actual = conic_obstruction(TwoCover{delta_mumford(divisor_P241(), model)}, model, 1, 4);
  CHECK_FALSE(actual.obstructed_anywhere());
}

TEST_CASE("elliptic 2-descent on congruent-number curves") {
  const std::map<long, int> expected{{1, 2}, {2, 2}, {3, 2}, {11, 2}, {5, 3}, {6, 3}, {7, 3},
                                     {13, 3}, {14, 3}, {17, 4}, {34, 4}, {41, 4}};
  for (const auto& [n, dim] : expected) {
    EllipticModel E{"n=" + std::to_string(n), 1, ints({-n, 0, n}), {}};
    DescentCertificate d = elliptic_two_descent(E);
    CHECK_MESSAGE(d.selmer_dim == dim, "n=" << n);
    CHECK(d.rank_bound == dim - 2);
    CHECK(d.odd_torsion_bound == 1);
  }
  // n = 1: E(Q) = Z/2 x Z/2 and rank 0.
  DescentCertificate d1 = elliptic_two_descent(EllipticModel{"n=1", 1, ints({-1, 0, 1}), {}});
  CHECK(d1.certified());
  CHECK(d1.torsion_points.size() == 3);
}

TEST_CASE("the six elliptic quotients for 241") {
  auto Es = elliptic_quotients(241);
  REQUIRE(Es.size() == 6);
  for (const auto& E : Es) {
    DescentCertificate d = elliptic_two_descent(E);
    CHECK(d.selmer_dim == 4);
    CHECK(d.rank_bound == 2);
    CHECK_FALSE(d.certified());
  }
}

TEST_CASE("Two-Selmer set of C_241 is the six Weierstrass images") {
  auto survey = two_cover_survey(241);
  CHECK(survey.size() == 256);
  int survivors = 0, conic_survivors = 0;
  for (const auto& e : survey) {
    survivors += e.in_two_selmer_set();
    conic_survivors += e.survives_conics();
    // A conic obstruction is a local failure.
    if (!e.survives_conics()) CHECK_FALSE(e.in_two_selmer_set());
  }
  CHECK(survivors == 6);
  CHECK(conic_survivors >= survivors);
}

TEST_CASE("points certificates") {
  PointsResult r7 = weierstrass_only(7);
  CHECK(r7.complete);
  CHECK(r7.points.size() == 6);
  PointsResult r5 = weierstrass_only(5);
  CHECK_FALSE(r5.complete);
  CHECK(r5.points.size() == 8);
  PointsResult r241 = points_certificate(241);
  CHECK_FALSE(r241.complete);
  CHECK(r241.points.size() == 6);
  REQUIRE(r241.chain.size() >= 2);
  CHECK(r241.chain[0].ok);
  CHECK(r241.chain[1].ok);
  try {
    weierstrass_only(241);
    FAIL("expected Incomplete");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Incomplete);
  }
}
