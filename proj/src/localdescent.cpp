#include "redei/localdescent.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>

#include "redei/errors.hpp"

namespace redei {

QuinticModel QuinticModel::scaled(const Integer& c) {
  if (c == 0) throw Error(ErrorKind::InvalidArgument, "zero scale");
  Integer a = abs(c);
  return QuinticModel{{Integer(-2 * a), Integer(-a), Integer(0), a, Integer(2 * a)}};
}

Rational QuinticModel::eval(const Rational& x) const {
  Rational r = 1;
  for (const auto& a : roots) r *= x - a;
  return r;
}

Integer QuinticModel::scale() const {
  Integer g = 0;
  for (const auto& a : roots) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  return g == 0 ? Integer(1) : g;
}

std::string QuinticModel::key() const {
  std::string s;
  for (const auto& a : roots) s += a.get_str() + ",";
  return s;
}

int target_dim(const LocalField& v, int g) {
  if (v.kind() == LocalField::Kind::Real) return g;
  if (v.prime() == 2) return 2 * g + g * v.degree();
  return 2 * g;
}

BitVec local_vector(const LocalField& v, const std::vector<LElem>& coords) {
  BitVec out;
  for (const auto& c : coords) out = out.append(v.square_class(c));
  return out;
}

bool in_hyperplane(const BitVec& vec, int dim_per_coord) {
  BitVec prod(dim_per_coord);
  for (std::size_t j = 0; j * dim_per_coord < vec.size(); ++j) prod ^= vec.slice(j * dim_per_coord, dim_per_coord);
  return prod.is_zero();
}

namespace {

LElem root_elem(const Integer& a) { return LElem::of(Rational(a)); }

}  // namespace

BitVec delta_point(const LocalPoint& P, const QuinticModel& model, const LocalField& v) {
  const int k = model.k();
  std::vector<LElem> coords(k);
  if (P.pair) {
    if (v.kind() != LocalField::Kind::Base) throw Error(ErrorKind::InvalidArgument, "pairs only over Q_l");
    LocalField M = LocalField::quadratic(v.prime(), P.m);
    LElem fx = LElem::of(1);
    for (int j = 0; j < k; ++j) {
      LElem diff = M.sub(P.xi, root_elem(model.roots[j]));
      fx = M.mul(fx, diff);
      Rational a = P.xi.x - model.roots[j];
      coords[j] = LElem::of(a * a - Rational(P.m) * P.xi.y * P.xi.y);
    }
    if (M.is_zero(fx) || !M.is_square(fx)) throw Error(ErrorKind::NotOnCurve, "f(xi) is not a square in " + M.name());
    return local_vector(v, coords);
  }
  int w = -1;
  LElem fx = LElem::of(1);
  for (int j = 0; j < k; ++j) {
    coords[j] = v.sub(P.xi, root_elem(model.roots[j]));
    if (v.is_zero(coords[j])) {
      w = j;
    } else {
      fx = v.mul(fx, coords[j]);
    }
  }
  if (w >= 0) {
    // Weierstrass point: coordinate w is the product of the others.
    coords[w] = fx;
    return local_vector(v, coords);
  }
  if (!v.is_square(fx)) throw Error(ErrorKind::NotOnCurve, "f(xi) is not a square in " + v.name());
  return local_vector(v, coords);
}

std::vector<Integer> weierstrass_row(const QuinticModel& model, int i) {
  std::vector<Integer> row(model.k());
  Integer prod = 1;
  for (int j = 0; j < model.k(); ++j) {
    if (j == i) continue;
    row[j] = squarefree_part(Integer(model.roots[i] - model.roots[j]));
    prod *= row[j];
  }
  row[i] = squarefree_part(prod);
  return row;
}

std::uint64_t budget_multiplier() {
  const char* s = std::getenv("REDEI_BUDGET");
  if (!s) return 1;
  long v = std::strtol(s, nullptr, 10);
  return v > 0 ? static_cast<std::uint64_t>(v) : 1;
}

namespace {

class ImageBuilder {
 public:
  ImageBuilder(const QuinticModel& model, const LocalField& v, std::uint64_t budget)
      : model_(model), v_(v), budget_(budget), span_(model.k() * v.class_dim()) {
    img_.field = v;
    img_.dim_per_coord = v.class_dim();
    img_.coords = model.k();
    img_.target_dim = target_dim(v, model.genus());
  }

  bool full() const { return img_.dim() >= img_.target_dim; }
  LocalImage take() { return std::move(img_); }

  void add(const BitVec& vec, const std::string& label) {
    if (!in_hyperplane(vec, img_.dim_per_coord))
      throw Error(ErrorKind::InternalInconsistency, "delta image off the hyperplane at " + v_.name());
    if (span_.in_row_span(vec)) return;
    span_.add_row(vec);
    img_.basis.push_back(vec);
    img_.sources.push_back(label);
    if (img_.dim() > img_.target_dim)
      throw Error(ErrorKind::InternalInconsistency, "local image at " + v_.name() + " exceeds its size");
  }

  /// One candidate point; false once the level budget is spent.
  bool try_point(const LocalPoint& P) {
    if (++used_ > budget_) return false;
    ++img_.candidates_tried;
    try {
      add(delta_point(P, model_, v_), P.label);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotOnCurve) throw;
    }
    return true;
  }

  void new_level() { used_ = 0; }

 private:
  const QuinticModel& model_;
  const LocalField& v_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  Gf2Matrix span_;
  LocalImage img_;
};

std::string rat_label(const Rational& q) { return to_string(q); }

std::string elem_label(const Rational& x, const Rational& y, const Integer& d) {
  if (y == 0) return rat_label(x);
  std::string s = x == 0 ? "" : rat_label(x);
  std::string root = d == -1 ? "i" : "sqrt(" + d.get_str() + ")";
  std::string coeff = y == 1 ? "" : y == -1 ? "-" : rat_label(y) + "*";
  if (!s.empty() && y > 0) s += "+";
  return s + coeff + root;
}

// Nonzero integers in the order 1, -1, 2, -2, ...
template <class F>
bool for_heights(std::uint64_t limit, F&& f) {
  for (std::uint64_t h = 1; h <= limit; ++h) {
    Integer n(static_cast<unsigned long>(h));
    if (!f(n)) return false;
    if (!f(Integer(-n))) return false;
  }
  return true;
}

std::vector<Integer> nontrivial_classes_q(const Integer& l) {
  if (l == 2) return {-1, 2, -2, 3, -3, 6, -6};
  Integer u = LocalField::canonical_unramified_d(l);
  return {u, l, Integer(u * l)};
}

}  // namespace

LocalImage local_image(const QuinticModel& model, const LocalField& v, const SearchBudget& budget) {
  const std::uint64_t limit = budget.per_level * budget_multiplier();
  ImageBuilder b(model, v, limit);
  const Integer c = model.scale();
  const Integer l = v.prime();
  const bool real = v.kind() == LocalField::Kind::Real;

  for (int i = 0; i < model.k(); ++i)
    b.add(delta_point(LocalPoint{root_elem(model.roots[i]), false, 0, "W" + model.roots[i].get_str()}, model, v),
          "W" + model.roots[i].get_str());

  auto point = [&](const Rational& X) {
    Rational xi = X * c;
    return LocalPoint{LElem::of(xi), false, 0, "D" + rat_label(xi)};
  };

  // Integral xi by height: c X for X in Z, or c (a + b sqrt d) in a quadratic field.
  auto field_points = [&](const Integer& den) {
    bool go = true;
    for (long H = 1; go && !b.full(); ++H) {
      for (long a = -H; go && a <= H && !b.full(); ++a) {
        for (long y = -H; go && y <= H && !b.full(); ++y) {
          if (std::labs(a) != H && std::labs(y) != H) continue;
          if (den != 1 && a % l == 0 && y % l == 0) continue;
          Rational xa = Rational(a) * c / den, ya = Rational(y) * c / den;
          go = b.try_point(LocalPoint{LElem{xa, ya, kExact}, false, 0, "D" + elem_label(xa, ya, v.d())});
        }
      }
    }
  };

  b.new_level();
  if (!b.full()) {
    if (v.degree() == 2) {
      b.try_point(point(0));
      field_points(1);
    } else {
      b.try_point(point(0));
      for_heights(limit, [&](const Integer& n) { return !b.full() && b.try_point(point(Rational(n))); });
    }
  }

  // xi with l-power denominators.
  if (!real && !b.full()) {
    b.new_level();
    if (v.degree() == 2) {
      field_points(l);
    } else {
      bool go = true;
      for (std::uint64_t H = 2; go && !b.full(); ++H) {
        Integer Hz(static_cast<unsigned long>(H));
        for (Integer lk = l; go && lk <= Hz && !b.full(); lk *= l) {
          auto attempt = [&](const Integer& n) {
            if (n % l == 0) return true;
            return go = b.try_point(point(Rational(n) / lk));
          };
          if (lk == Hz) {
            for (Integer n = 1; go && n <= Hz && !b.full(); ++n) {
              attempt(n);
              if (go && !b.full()) attempt(Integer(-n));
            }
          } else {
            attempt(Hz);
            if (go && !b.full()) attempt(Integer(-Hz));
          }
        }
      }
    }
  }


  // Conjugate pairs over Q_l(sqrt m).
  if (v.kind() == LocalField::Kind::Base && !b.full()) {
    for (const Integer& m : nontrivial_classes_q(l)) {
      b.new_level();
      bool go = true;
      for (long H = 1; go && !b.full(); ++H) {
        for (long a = -H; go && a <= H && !b.full(); ++a) {
          for (long y = 1; go && y <= H && !b.full(); ++y) {
            if (std::labs(a) != H && y != H) continue;
            Rational xa = Rational(a) * c, ya = Rational(y) * c;
            go = b.try_point(LocalPoint{LElem{xa, ya, kExact}, true, m, "pair(" + elem_label(xa, ya, m) + ")"});
          }
        }
      }
      if (b.full()) break;
    }
  }

  if (!b.full()) {
    LocalImage partial = b.take();
    throw Error(ErrorKind::SearchBudgetExhausted, "local image at " + v.name() + " for roots " + model.key() +
                                                      " reached dim " + std::to_string(partial.dim()) + " of " +
                                                      std::to_string(partial.target_dim));
  }
  return b.take();
}

const LocalImage& cached_local_image(const QuinticModel& model, const LocalField& v) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<LocalImage>> cache;
  std::string key = model.key() + "|" + v.name();
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto img = std::make_unique<LocalImage>(local_image(model, v));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(img));
  return *it->second;
}

bool membership(const LocalImage& img, const BitVec& vec) {
  Gf2Matrix m(img.basis, static_cast<std::size_t>(img.coords * img.dim_per_coord));
  return m.in_row_span(vec);
}

std::string class_label(const LocalField& v, const BitVec& cls) {
  if (cls.is_zero()) return "1";
  // Integers n, then n*r with r = 1 + sqrt(d) in quadratic extensions.
  for (int pass = 0; pass < (v.degree() == 2 ? 2 : 1); ++pass) {
    for (long h = 1; h <= 64; ++h) {
      for (long s : {h, -h}) {
        LElem e = pass == 0 ? LElem::of(s) : LElem{Rational(s), Rational(s), kExact};
        if (v.square_class(e) == cls) {
          if (pass == 0) return std::to_string(s);
          return (s == 1 ? "" : s == -1 ? "-" : std::to_string(s)) + "r";
        }
      }
    }
  }
  return "[" + cls.to_string() + "]";
}

}  // namespace redei
