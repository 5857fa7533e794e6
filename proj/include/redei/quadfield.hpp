#pragma once

// Quadratic fields Q(sqrt d): reduced ideals, class numbers, fundamental units,
// prime splitting, principal generators, S-unit bases and completions.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "redei/arith.hpp"
#include "redei/errors.hpp"
#include "redei/gf2.hpp"
#include "redei/localfield.hpp"

namespace redei {

/// x + y sqrt(d).
struct QuadElem {
  Rational x = 0;
  Rational y = 0;
  Integer d = 0;

  QuadElem() = default;
  QuadElem(Rational x_, Rational y_, Integer d_) : x(std::move(x_)), y(std::move(y_)), d(std::move(d_)) {}
  static QuadElem rational(const Rational& q, const Integer& d) { return {q, 0, d}; }

  Rational norm() const { return x * x - Rational(d) * y * y; }
  Rational trace() const { return 2 * x; }
  QuadElem conj() const { return {x, -y, d}; }
  QuadElem inverse() const;
  bool is_zero() const { return x == 0 && y == 0; }
  std::string to_string() const;

  friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
    return {a.x * b.x + Rational(a.d) * a.y * b.y, a.x * b.y + a.y * b.x, a.d};
  }
  friend QuadElem operator+(const QuadElem& a, const QuadElem& b) { return {a.x + b.x, a.y + b.y, a.d}; }
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b) { return {a.x - b.x, a.y - b.y, a.d}; }
  friend QuadElem operator-(const QuadElem& a) { return {-a.x, -a.y, a.d}; }
  friend bool operator==(const QuadElem& a, const QuadElem& b) { return a.x == b.x && a.y == b.y && a.d == b.d; }
};

/// Primitive ideal [a, (b + sqrt(disc))/2] with 4a | b^2 - disc; norm a.
struct QuadIdeal {
  Integer a;
  Integer b;
  friend bool operator==(const QuadIdeal&, const QuadIdeal&) = default;
};

enum class Splitting { Split, Inert, Ramified };

/// A place of K.  Finite places carry the prime ideal; the split embedding sends
/// sqrt(disc) to the l-adic root congruent to -b.  Real places: index 0 sends
/// sqrt d to the positive root, index 1 to the negative one.
struct KPlace {
  enum class Type { Real, Complex, Finite } type = Type::Finite;
  Integer l = 0;
  Splitting splitting = Splitting::Split;
  QuadIdeal ideal{};
  int real_index = 0;
  std::string label;
};

class QuadField {
 public:
  static QuadField make(const Integer& d, const Integer& bound = Integer(10000000));

  const Integer& d() const { return d_; }
  const Integer& disc() const { return disc_; }
  bool is_real() const { return d_ > 0; }
  const Integer& class_number() const { return h_; }
  /// Real case: the unit > 1 generating O* modulo torsion.
  const std::optional<QuadElem>& fundamental_unit() const { return eps_; }
  /// Generator of the torsion units modulo squares: i for d = -1, else -1.
  QuadElem torsion_unit() const;
  QuadElem sqrt_disc_half(const Integer& b) const;  // (b + sqrt disc)/2
  QuadElem elem(const Rational& x, const Rational& y = 0) const { return {x, y, d_}; }

  Splitting split_type(const Integer& l) const;
  /// Places above l: split primes come out as (p, q) with p the smaller b.
  std::vector<KPlace> places_above(const Integer& l) const;
  std::vector<KPlace> infinite_places() const;
  QuadIdeal prime_power(const QuadIdeal& p, const Integer& l, unsigned j) const;

  /// Generator of a if a is principal.
  std::optional<QuadElem> principal_generator(QuadIdeal a) const;
  /// (k, x) with k the order of [p] and (x) = p^k.
  std::pair<unsigned, QuadElem> class_order_and_generator(const KPlace& p) const;
  /// Whether x lies in the ideal a (x integral).
  bool contains(const QuadIdeal& a, const QuadElem& x) const;

  LocalField completion(const KPlace& w) const;
  /// Image of x in the completion at w, l-adic precision n for approximated roots.
  LElem embed(const QuadElem& x, const KPlace& w, int n) const;
  /// Square class of x in K_w^*/K_w^*2, with automatic precision doubling.
  BitVec localize(const QuadElem& x, const KPlace& w) const;
  /// Run f on embeddings of increasing precision until it stops throwing PrecisionExhausted.
  template <class F>
  auto with_precision(F&& f) const -> decltype(f(0));

 private:
  QuadField() = default;
  Integer normalize_b(const Integer& b, const Integer& a) const;
  bool is_reduced(const QuadIdeal& I) const;
  // a = gamma * next(a)
  QuadIdeal rho(const QuadIdeal& I, QuadElem* gamma) const;
  QuadIdeal reduce(QuadIdeal I, QuadElem* gamma) const;
  void compute_class_number();
  void compute_unit();

  Integer d_, disc_, sqrt_floor_, h_;
  std::optional<QuadElem> eps_;
};

template <class F>
auto QuadField::with_precision(F&& f) const -> decltype(f(0)) {
  for (int n = 64;; n *= 2) {
    try {
      return f(n);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted || n >= 8192) throw;
    }
  }
}

struct SUnitBasis {
  std::vector<QuadElem> gens;
  std::vector<std::string> labels;
  std::vector<KPlace> primes;  // finite places of S in generator order
};

/// Basis of K(S) for S the places above the given rational primes (odd h required).
SUnitBasis s_unit_basis(const QuadField& K, const std::vector<Integer>& rational_primes);

/// A sign condition on one generator of an S-unit basis.
struct SignConstraint {
  enum class Kind { SquareAt, PositiveNorm, UnramifiedAt, PositiveAtReal, ClassAt } kind;
  std::size_t gen = 0;
  KPlace place{};
  /// ClassAt: accepted local classes (coordinates in the completion at place).
  std::function<bool(const BitVec&)> accept;
};

/// Multiply generators by -1, eps, -eps (earlier unit generators) so every constraint
/// holds; the first working multiplier in that order wins.
SUnitBasis normalize_signs(const QuadField& K, SUnitBasis basis, const std::vector<SignConstraint>& constraints);

}  // namespace redei
