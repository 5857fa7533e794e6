#pragma once

// Redei symbols [a,b,c] in mu_2 for squarefree rational classes a, b, c.

#include <string>
#include <vector>

#include "redei/arith.hpp"
#include "redei/quadfield.hpp"

namespace redei {

struct Admissibility {
  bool ok = true;
  std::vector<std::string> failures;  // e.g. "(2,-1)_3 = -1", "gcd of discriminants: 2"
};

/// Pairwise Hilbert symbols trivial everywhere and coprime discriminants.
Admissibility admissible(const Integer& a, const Integer& b, const Integer& c);

/// Discriminant of Q(sqrt d), with 1 for the trivial class.
Integer field_discriminant(const Integer& d);

struct ConicSolution {
  Integer x, y, z;
};

/// Primitive solution of x^2 - a y^2 - b z^2 = 0, searched by increasing
/// max(|y|,|z|), then y, then |z| with z > 0 first.  skip discards that many
/// earlier solutions (distinct up to sign).
ConicSolution solve_conic(const Integer& a, const Integer& b, int skip = 0);

struct MinRamData {
  Integer a, b;
  ConicSolution sol;
  Integer t;
  QuadElem alpha;  // 2t(x + z sqrt b)
  QuadElem beta;   // t(x + y sqrt a)
  bool case_c = false;
  std::vector<std::string> certificate;
};

MinRamData minimal_ramification_twist(const Integer& a, const Integer& b, const ConicSolution& sol);

struct Contribution {
  Place place = Place::real();
  int value = 1;
  bool cross_checked = false;
};

/// Artin symbol at q | c (q = 0 for the infinite place).
Contribution artin_contribution(const MinRamData& mr, const Integer& q);

struct RedeiCertificate {
  Integer a, b, c;
  bool trivial = false;
  MinRamData min_ram;
  std::vector<Contribution> contributions;
  int value = 1;
};

RedeiCertificate redei_symbol(const Integer& a, const Integer& b, const Integer& c, int conic_skip = 0);
inline int redei_value(const Integer& a, const Integer& b, const Integer& c) { return redei_symbol(a, b, c).value; }

}  // namespace redei
