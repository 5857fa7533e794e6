#pragma once

// Local images of the 2-descent map delta_v for y^2 = (x - a1)...(x - ak) with
// k odd and rational roots (k = 5 for the genus-2 curves, 3 for elliptic
// quotients), over Q_l, quadratic extensions of Q_l and R.  A local image is a
// subspace of (L*/L*^2)^k, stored as flattened bit vectors: coordinate j occupies
// bits [j*dim, (j+1)*dim) with dim = L.class_dim().

#include <cstdint>
#include <string>
#include <vector>

#include "redei/arith.hpp"
#include "redei/gf2.hpp"
#include "redei/localfield.hpp"

namespace redei {

struct QuinticModel {
  std::vector<Integer> roots;  // strictly increasing, odd count

  /// (-2c, -c, 0, c, 2c); c = 1 is C, c = p is C_p.
  static QuinticModel scaled(const Integer& c);
  int k() const { return static_cast<int>(roots.size()); }
  int genus() const { return (k() - 1) / 2; }
  Rational eval(const Rational& x) const;
  /// gcd of the roots (the twist scale), 1 when all roots vanish.
  Integer scale() const;
  std::string key() const;
};

/// 2g for odd l, 2g + g[L:Q_2] at l = 2, g at R (all roots real).
int target_dim(const LocalField& v, int genus = 2);

/// A point for delta: xi in L, or a conjugate pair xi, xi' over L(sqrt m) given by
/// xi = a + b sqrt(m) with a, b in Q (then the norm rule applies).
struct LocalPoint {
  LElem xi;
  bool pair = false;
  Integer m = 0;  // pair: the extension L(sqrt m), L = Q_l
  std::string label;
};

/// The k coordinates of delta(P) flattened.  A Weierstrass xi uses the
/// completion rule.  Throws NotOnCurve when f(xi) is not a square.
BitVec delta_point(const LocalPoint& P, const QuinticModel& model, const LocalField& v);

/// delta of the Weierstrass class (a_i, 0) over Q, as squarefree integers.
std::vector<Integer> weierstrass_row(const QuinticModel& model, int i);

struct LocalImage {
  LocalField field = LocalField::real();
  int dim_per_coord = 1;
  int coords = 5;
  int target_dim = 0;
  std::vector<BitVec> basis;
  std::vector<std::string> sources;  // the point behind each basis vector
  std::uint64_t candidates_tried = 0;

  int dim() const { return static_cast<int>(basis.size()); }
};

struct SearchBudget {
  std::uint64_t per_level = 10000;
};

/// Span of delta(J(L)) grown from the Weierstrass classes, then integral xi by
/// height, xi with l-power denominators, field points a + b sqrt(d), and conjugate
/// pairs over quadratic extensions.  Throws SearchBudgetExhausted.
LocalImage local_image(const QuinticModel& model, const LocalField& v, const SearchBudget& budget = {});
/// Same, memoized per (model, field); safe under concurrent calls.
const LocalImage& cached_local_image(const QuinticModel& model, const LocalField& v);

bool membership(const LocalImage& img, const BitVec& vec);
/// Product of the coordinates is trivial.
bool in_hyperplane(const BitVec& vec, int dim_per_coord);

/// Flattened vector of the classes of elements of L.
BitVec local_vector(const LocalField& v, const std::vector<LElem>& coords);
/// Smallest-height representative of a class of L as a string ("6", "-3", "1+i", "3r").
std::string class_label(const LocalField& v, const BitVec& cls);

/// Budget multiplier from REDEI_BUDGET (default 1).
std::uint64_t budget_multiplier();

}  // namespace redei
