#pragma once

// The per-prime pipeline for C_p : y^2 = x(x^2 - p^2)(x^2 - 4p^2): point counts,
// torsion, quartic splitting, Redei symbols, Selmer dimensions and rank bounds.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "redei/localdescent.hpp"
#include "redei/selmer.hpp"

namespace redei {

struct ZetaCount {
  Integer q;
  Integer points_q;   // #C(F_q), including the point at infinity
  Integer points_q2;  // #C(F_{q^2}); genus 2 only
  Integer jacobian_order;
};

/// Exact counts by enumeration over F_q and F_q[t]/(t^2 - n).  q an odd prime of
/// good reduction; throws BadReduction otherwise.  In genus 1 the order is #E(F_q).
ZetaCount count_jacobian(const QuinticModel& model, const Integer& q);

struct TorsionCert {
  std::string structure;  // "(Z/2)^4"
  std::vector<std::pair<Integer, Integer>> counts;  // (q, #J(F_q))
  Integer gcd;
};

/// J_p(Q)_tors: contains J[2] (16 points); gcd of #J_p(F_q) bounds it above.
TorsionCert torsion_structure(const Integer& p);

enum class QuarticField { FourthRootOfTwo, SqrtOnePlusSqrtThree };
std::string to_string(QuarticField f);

struct SplitCert {
  bool splits = false;
  int symbol_route = 0;  // product of the Redei symbols
  int roots_mod_p = 0;   // roots of x^4 - 2 or x^4 - 2x^2 - 2 in F_p
};

/// Both routes; throws InternalInconsistency when they disagree.  Needs p = 1 mod 8
/// (fourth root of 2) or p = 1 mod 24 (sqrt(1 + sqrt 3)).
SplitCert splits_in_quartic(const Integer& p, QuarticField f);
/// Roots mod p of the minimal polynomial (p odd).
int quartic_roots_mod(const Integer& p, QuarticField f);

struct PrimeReport {
  Integer p;
  std::map<std::string, long> classes;  // "mod8" -> p mod 8, ...
  std::vector<SymbolValue> symbols;
  int dim_S2_Jp_Q = 0;
  std::optional<int> dim_S2_J_quad;
  std::string quad_field;  // "Q(sqrt(-p))" or "Q(sqrt(p))"
  int rank_lower = 0;
  int rank_upper = 0;
  std::optional<int> sha2_dim;  // exact when determined
  int sha2_lower = 0, sha2_upper = 0;
  std::optional<int> conditional_rank;  // assumes Sha finite
  std::string torsion;
  std::string theorem_applied;  // descriptive tag, "none" when no statement covers p
  std::string hypothesis;
  std::map<std::string, bool> quartic_splittings;
  std::optional<int> rational_points;  // when rank 0 forces Weierstrass points only
  std::vector<std::string> notes;
};

/// rank_lower_known lets callers contribute independent divisors (points module).
/// field_sign = +1 or -1 forces K = Q(sqrt(+-p)); 0 picks the field of p's class.
PrimeReport report(const Integer& p, int rank_lower_known = 0, int field_sign = 0);

}  // namespace redei
