#pragma once

// Rational points on C_p: delta of Mumford divisors, rank lower bounds, conic
// obstructions on two-covers, and rank-0 certificates for the elliptic quotients
// used to pin down C_241(Q).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "redei/arith.hpp"
#include "redei/localdescent.hpp"
#include "redei/selmer.hpp"

namespace redei {

/// Coefficients, constant term first.
using Poly = std::vector<Rational>;

/// Divisor D - deg(u) * infinity with u monic of degree <= 2, deg v < deg u.
struct MumfordDivisor {
  Poly u{Rational(1)};
  Poly v;
};

bool mumford_valid(const MumfordDivisor& D, const QuinticModel& model);

/// Coordinate j is (-1)^deg(u) u(a_j) as a squarefree integer; a Weierstrass
/// factor x - a_i of u contributes the completion-rule row instead.  Throws
/// InvalidDivisor when D is not a reduced Mumford pair.
std::vector<Integer> delta_mumford(const MumfordDivisor& D, const QuinticModel& model);

/// dim span(images + torsion) - dim span(torsion); vectors of squarefree integers.
int rank_lower_bound(const std::vector<std::vector<Integer>>& images, const TorsionImage& torsion);

/// P and Q on C_241.
MumfordDivisor divisor_P241();
MumfordDivisor divisor_Q241();
/// Rank lower bound from the divisors known for p (P and Q at 241), else 0.
int known_divisor_rank(const Integer& p);

struct TwoCover {
  std::vector<Integer> s;  // e_1..e_k, squarefree
};

struct PlaceVerdict {
  Place place = Place::real();
  bool solvable = true;
  std::optional<bool> brute_force;  // small primes only
};

struct ConicCheck {
  int i = 0, j = 0;  // 1-indexed
  Integer a, b, c;   // a Y^2 + b Z^2 = c
  std::vector<PlaceVerdict> places;
  std::vector<Place> obstructed;  // increasing, real place first

  bool obstructed_anywhere() const { return !obstructed.empty(); }
};

/// e_i y_i^2 - e_j y_j^2 = a_j - a_i over every place where a Hilbert symbol can
/// be -1.  Each verdict at l <= 13 is also decided by a search modulo l^k;
/// disagreement throws InternalInconsistency.
ConicCheck conic_obstruction(const TwoCover& s, const QuinticModel& model, int i, int j);

/// Solvability of a Y^2 + b Z^2 = c W^2 over Q_l by primitive solutions modulo
/// l^3 (l^5 at 2) that satisfy Hensel's condition.
bool conic_solvable_bruteforce(const Integer& a, const Integer& b, const Integer& c, const Integer& l);

/// c y^2 = (x - r_1)(x - r_2)(x - r_3).
struct EllipticModel {
  std::string name;
  Integer c = 1;
  std::vector<Integer> roots;
  std::vector<int> entries;  // the coordinates of s that produce it, 1-indexed

  /// X = c x, Y = c^2 y: Y^2 = prod (X - c r_i).
  QuinticModel normalized() const;
  std::string equation() const;
};

struct DescentCertificate {
  EllipticModel curve;
  QuinticModel model;
  int selmer_dim = 0;
  std::vector<std::pair<Integer, Integer>> selmer_pairs;  // (d1, d2) = classes of X - e_1, X - e_2
  int rank_bound = 0;                // selmer_dim - 2
  bool torsion_independent = false;  // delta(E[2]) has dimension 2, so no 4-torsion
  std::vector<std::pair<Integer, Integer>> counts;  // (q, #E(F_q))
  Integer odd_torsion_bound;                        // odd part of gcd #E(F_q)
  /// Affine torsion points on the normalized model: E[2] closed under halving.
  std::vector<std::pair<Rational, Rational>> torsion_points;
  bool rank_zero = false;
  bool torsion_is_two_torsion = false;

  /// E(Q) = E[2].
  bool certified() const { return rank_zero && torsion_is_two_torsion; }
};

/// Complete 2-descent through the local-image engine; survivors beyond torsion
/// are reported in selmer_pairs and leave rank_zero false.
DescentCertificate elliptic_two_descent(const EllipticModel& E);

/// The six quotients attached to delta(0), delta(D_-2p), delta(D_-p), delta(D_0),
/// delta(D_p), delta(D_2p).
std::vector<EllipticModel> elliptic_quotients(const Integer& p);

struct CertificateLink {
  std::string claim;
  bool ok = false;
  std::vector<std::string> details;
};

/// delta_v(C(Q_v)) for v = R or Q_l: class vectors of the local points, found by
/// enumerating x modulo the precision beyond which the classes are constant.
std::vector<BitVec> curve_local_image(const QuinticModel& model, const LocalField& v);

struct SurveyEntry {
  std::vector<Integer> s;
  std::vector<std::string> conic_obstructions;  // "(1,4) at 2"
  std::vector<std::string> local_failures;      // places v with X_s(Q_v) empty
  bool survives_conics() const { return conic_obstructions.empty(); }
  bool in_two_selmer_set() const { return local_failures.empty(); }
};

/// Every element of S^2(J_p/Q): the conic battery over all pairs (an upper set)
/// and everywhere-local solvability of X_s (the Two-Selmer set).  Good primes
/// below the Weil bound for the genus of X_s are tested over F_l.
std::vector<SurveyEntry> two_cover_survey(const Integer& p);

/// The links for one Weierstrass image s: the standard quotient, then the
/// remaining triples of coordinates until one certifies rank 0.
struct QuotientLink {
  std::vector<Integer> s;
  DescentCertificate standard_curve;
  std::optional<DescentCertificate> alternative;
  /// Rank 0 with extra torsion whose x-coordinates give no point of C.
  bool alternative_ok = false;
  bool ok() const { return standard_curve.certified() || alternative_ok; }
};

struct PointsResult {
  Integer p;
  std::vector<std::pair<std::string, std::string>> points;  // (x, y), "inf" for infinity
  bool complete = false;
  std::string method;
  std::vector<CertificateLink> chain;
  std::vector<QuotientLink> quotients;
  std::vector<ConicCheck> conics;
  std::vector<std::string> notes;
};

/// C_p(Q) with whatever certificate chain is available; complete says whether
/// the chain proves the list.
PointsResult points_certificate(const Integer& p);
/// Same, throwing Incomplete unless the chain is complete (p = 5 returns its
/// eight points flagged incomplete: the last step is Chabauty).
PointsResult weierstrass_only(const Integer& p);

}  // namespace redei
