#pragma once

// 2-Selmer groups of J for y^2 = f(x), f with k rational roots (k = 5, or 3 for
// elliptic curves), over Q and over quadratic fields of odd class number.  An
// element of (K(S))^k is a bit vector of length kn: bit j*n + i is the exponent
// of generator i in coordinate j.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "redei/gf2.hpp"
#include "redei/localdescent.hpp"
#include "redei/quadfield.hpp"

namespace redei {

struct GlobalPlace {
  std::string label;
  LocalField field = LocalField::real();
  std::optional<KPlace> kplace;  // over K
  std::vector<BitVec> gen_classes;
};

struct DescentProblem {
  QuinticModel model;
  std::optional<QuadField> K;        // empty: over Q
  std::vector<std::string> labels;   // generator labels
  std::vector<Integer> qgens;        // over Q: -1 and the primes of S
  std::vector<QuadElem> kgens;       // over K
  std::vector<GlobalPlace> places;   // S, including real places
  std::vector<GlobalPlace> aux;      // extra places making localization injective on K(S)
  std::vector<std::string> notes;

  std::size_t n() const { return labels.size(); }
};

/// S = {real} and the primes dividing 2 * disc(f); K(S) = <-1, primes>.
DescentProblem descent_over_q(const QuinticModel& model);
/// S = real places and the places above the given rational primes.
DescentProblem descent_over_quadratic(const QuinticModel& model, const QuadField& K, const SUnitBasis& basis);

/// Exponent vector of a rational S-unit in K(S).
BitVec rational_log(const DescentProblem& prob, const Rational& r);
/// Flattened vector of rational S-units.
BitVec rational_vector(const DescentProblem& prob, const std::vector<Integer>& coords);

struct TorsionImage {
  std::vector<std::vector<Integer>> rows;  // delta of (a_1,0), ..., (a_{k-1},0)
};
TorsionImage torsion_delta(const QuinticModel& model);

struct SelmerGroup {
  std::size_t n = 0;
  int k = 5;
  std::vector<std::string> labels;
  std::vector<BitVec> torsion;  // independent images of J[2]
  std::vector<BitVec> extra;    // completes torsion to a basis
  int dim = 0;

  std::vector<BitVec> basis() const;
  bool contains(const BitVec& e) const;
};

SelmerGroup selmer_group(const DescentProblem& prob);

/// "x2*y3", "-y2*y3", "1"; over Q the squarefree integer.
std::string coordinate_string(const DescentProblem& prob, const BitVec& e, int j);
std::string element_string(const DescentProblem& prob, const BitVec& e);
/// Parse "(1,y3,x2,1,x2*y3)"-style labels back into an element.
BitVec parse_element(const DescentProblem& prob, const std::string& text);

int selmer_dim_Jp_over_Q(const Integer& p);

struct SymbolValue {
  std::string name;  // "[2,2,-p]"
  Integer a, b, c;
  std::optional<int> value;  // empty when undefined
  std::string failure;
};

/// Generators normalized as in the analysis of each class: for K = Q(sqrt(-p)),
/// p = 23 mod 24, and K = Q(sqrt p), p = 1, 17 mod 24.  Other fields keep the
/// raw basis and record a note.
SUnitBasis normalized_basis(const QuadField& K, const Integer& p, std::vector<std::string>* notes = nullptr);

struct QuadSelmerResult {
  Integer p;
  int sign = 1;
  bool in_class = true;  // p in the congruence class matching the sign
  DescentProblem problem;
  SelmerGroup group;
  int dim = 0;
  std::vector<SymbolValue> symbols;
};

/// The Redei symbols governing the class of p: [2,2,-p],[3,6,-p] for 23 mod 24;
/// [2,2,p],[2,-1,p] for 17 mod 24; those and [3,-2,p],[3,6,p] for 1 mod 24.
std::vector<SymbolValue> governing_symbols(const Integer& p);

QuadSelmerResult selmer_J_over_quad(const Integer& p, int sign);
inline int selmer_dim_J_over_quad(const Integer& p, int sign) { return selmer_J_over_quad(p, sign).dim; }

}  // namespace redei
