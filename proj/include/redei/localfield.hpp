#pragma once

// Completions of Q and of quadratic fields: Q_l, quadratic extensions of Q_l
// (unramified or ramified, including l = 2) and R.  Elements are x + y*sqrt(d)
// with rational coordinates known modulo l^prec.

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "redei/arith.hpp"
#include "redei/gf2.hpp"

namespace redei {

constexpr int kExact = INT_MAX / 4;

struct LElem {
  Rational x = 0;
  Rational y = 0;
  int prec = kExact;  // absolute l-adic precision of both coordinates

  static LElem of(const Rational& x) { return LElem{x, 0, kExact}; }
  bool is_exact() const { return prec >= kExact; }
};

class LocalField {
 public:
  enum class Kind { Real, Base, Unramified, Ramified };

  /// R; elements may involve sqrt(d) for d > 0, read as the positive root.
  static LocalField real(const Integer& d = 1);
  static LocalField base(const Integer& l);
  /// Q_l(sqrt d) for squarefree d that is not a square in Q_l.
  static LocalField quadratic(const Integer& l, const Integer& d);
  /// Canonical unramified quadratic extension: Q_l(sqrt d0), d0 = -1 (l = 3 mod 4),
  /// -3 (l = 2) or the least non-residue.
  static LocalField unramified(const Integer& l);
  static Integer canonical_unramified_d(const Integer& l);

  Kind kind() const { return kind_; }
  const Integer& prime() const { return l_; }
  const Integer& d() const { return d_; }
  int degree() const { return kind_ == Kind::Unramified || kind_ == Kind::Ramified ? 2 : 1; }
  int ram_index() const { return kind_ == Kind::Ramified ? 2 : 1; }
  int residue_degree() const { return kind_ == Kind::Unramified ? 2 : 1; }
  /// Dimension of L*/L*^2 over F_2.
  int class_dim() const;
  std::string name() const;
  bool operator==(const LocalField& o) const { return kind_ == o.kind_ && l_ == o.l_ && d_ == o.d_; }

  LElem mul(const LElem& a, const LElem& b) const;
  LElem add(const LElem& a, const LElem& b) const;
  LElem sub(const LElem& a, const LElem& b) const;
  LElem conj(const LElem& a) const { return LElem{a.x, -a.y, a.prec}; }
  bool is_zero(const LElem& a) const;

  /// Normalized valuation (v(pi) = 1).  Throws PrecisionExhausted when undetermined.
  int valuation(const LElem& a) const;
  /// Coordinates in L*/L*^2; bit 0 is the valuation parity at finite places.
  BitVec square_class(const LElem& a) const;
  bool is_square(const LElem& a) const { return square_class(a).is_zero(); }
  /// Whether u = w^2 mod pi^m for some integral w (u integral, exact).
  bool is_square_mod(const LElem& u, int m) const;
  /// a / pi^v(a) as an exact approximant; *v receives v(a).  Throws PrecisionExhausted
  /// unless the unit is known modulo 8 (l = 2) or modulo l.
  LElem unit_part(const LElem& a, int* v) const;
  /// Whether L(sqrt a)/L is unramified (a square counts).
  bool unramified_sqrt(const LElem& a) const;

 private:
  LocalField() = default;
  void build_unit_table();
  int vmin(const LElem& a) const;
  LElem uniformizer() const;
  LElem exact_div(const LElem& a, const LElem& b) const;
  int residue_key(const LElem& u) const;

  Kind kind_ = Kind::Real;
  Integer l_ = 0;
  Integer d_ = 1;
  // l = 2, degree 2: O = Z_2[omega]; omega^2 = t*omega + n
  bool half_basis_ = false;
  int t_ = 0;
  Integer n_ = 0;
  std::vector<int> unit_coords_;  // residue key -> coordinate mask, -1 for non-units
  int unit_dim_ = 0;
};

}  // namespace redei
