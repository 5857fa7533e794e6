#include "redei/quadfield.hpp"

#include <map>
#include <set>

namespace redei {

namespace {

Integer center_mod(const Integer& b, const Integer& a) {
  // representative of b mod 2a in (-a, a]
  Integer m = 2 * a;
  Integer r = b % m;
  if (r < 0) r += m;
  if (r > a) r -= m;
  return r;
}

}  // namespace

QuadElem QuadElem::inverse() const {
  Rational n = norm();
  if (n == 0) throw Error(ErrorKind::Zero, "inverse of 0");
  return {x / n, -y / n, d};
}

std::string QuadElem::to_string() const {
  if (y == 0) return x.get_str();
  std::string s = x == 0 ? "" : x.get_str();
  if (x != 0 && y > 0) s += "+";
  if (y == -1) {
    s += "-";
  } else if (y != 1) {
    s += y.get_str() + "*";
  }
  return s + "sqrt(" + d.get_str() + ")";
}

QuadField QuadField::make(const Integer& d, const Integer& bound) {
  if (d == 0 || d == 1 || squarefree_part(d) != d) throw Error(ErrorKind::InvalidArgument, "d must be squarefree, not 0 or 1");
  if (abs(d) > bound) throw Error(ErrorKind::BudgetExceeded, "|d| above the configured bound");
  QuadField K;
  K.d_ = d;
  Integer r = d % 4;
  if (r < 0) r += 4;
  K.disc_ = r == 1 ? d : 4 * d;
  if (d > 0) K.sqrt_floor_ = isqrt(K.disc_);
  K.compute_class_number();
  if (K.is_real()) K.compute_unit();
  return K;
}

QuadElem QuadField::torsion_unit() const { return d_ == -1 ? elem(0, 1) : elem(-1); }

QuadElem QuadField::sqrt_disc_half(const Integer& b) const {
  // sqrt(disc) = f sqrt(d), f = 1 or 2
  Rational f = disc_ == d_ ? Rational(1) : Rational(2);
  return elem(Rational(b) / 2, f / 2);
}

Integer QuadField::normalize_b(const Integer& b, const Integer& a) const {
  if (is_real() && a * a < disc_) {
    // largest b' < sqrt(disc) with b' = b mod 2a
    Integer m = 2 * a;
    Integer t = (sqrt_floor_ - b) % m;
    if (t < 0) t += m;
    return sqrt_floor_ - t;
  }
  return center_mod(b, a);
}

bool QuadField::is_reduced(const QuadIdeal& I) const {
  if (!is_real()) {
    Integer c = (I.b * I.b - disc_) / (4 * I.a);
    return abs(I.b) <= I.a && I.a <= c;
  }
  if (I.b <= 0 || I.b > sqrt_floor_) return false;
  Integer L = disc_ + 4 * I.a * I.a - I.b * I.b;
  if (L < 0) return true;
  return L * L < 16 * I.a * I.a * disc_;
}

QuadIdeal QuadField::rho(const QuadIdeal& I, QuadElem* gamma) const {
  Integer c = (I.b * I.b - disc_) / (4 * I.a);
  if (gamma) {
    QuadElem g = sqrt_disc_half(I.b);
    *gamma = elem(g.x / Rational(c), g.y / Rational(c));
  }
  QuadIdeal J{abs(c), 0};
  J.b = normalize_b(-I.b, J.a);
  return J;
}

QuadIdeal QuadField::reduce(QuadIdeal I, QuadElem* gamma) const {
  if (gamma) *gamma = elem(1);
  for (int iter = 0;; ++iter) {
    I.b = normalize_b(I.b, I.a);
    if (is_reduced(I)) return I;
    if (iter > 100000) throw Error(ErrorKind::InternalInconsistency, "reduction does not terminate");
    QuadElem g;
    I = rho(I, gamma ? &g : nullptr);
    if (gamma) *gamma = *gamma * g;
  }
}

void QuadField::compute_class_number() {
  if (!is_real()) {
    // reduced forms |b| <= a <= c, b >= 0 when |b| = a or a = c
    const long D = disc_.get_si();
    long count = 0;
    for (long a = 1; 3 * a * a <= -D; ++a) {
      for (long b = -a + 1; b <= a; ++b) {
        if (((b - D) % 2) != 0) continue;
        long num = b * b - D;
        if (num % (4 * a) != 0) continue;
        long c = num / (4 * a);
        if (c < a) continue;
        if (a == c && b < 0) continue;
        ++count;
      }
    }
    h_ = count;
    return;
  }
  std::set<std::pair<Integer, Integer>> reduced;
  for (Integer a = 1; a <= sqrt_floor_; ++a) {
    for (Integer b = 1; b <= sqrt_floor_; ++b) {
      if ((b - disc_) % 2 != 0) continue;
      if ((b * b - disc_) % (4 * a) != 0) continue;
      if (is_reduced({a, b})) reduced.insert({a, b});
    }
  }
  Integer cycles = 0;
  std::set<std::pair<Integer, Integer>> seen;
  for (const auto& start : reduced) {
    if (seen.count(start)) continue;
    ++cycles;
    QuadIdeal I{start.first, start.second};
    do {
      seen.insert({I.a, I.b});
      I = rho(I, nullptr);
    } while (!(I.a == start.first && I.b == start.second));
  }
  h_ = cycles;
}

void QuadField::compute_unit() {
  QuadIdeal start{1, normalize_b(disc_ % 2, 1)};
  QuadIdeal I = start;
  QuadElem eps = elem(1);
  do {
    QuadElem g;
    I = rho(I, &g);
    eps = eps * g;
  } while (!(I == start));
  if (abs(eps.norm()) != 1) throw Error(ErrorKind::InternalInconsistency, "cycle product is not a unit");
  if (eps.y < 0) eps = eps.conj();
  if (eps.x < 0) eps = -eps;
  if (eps.y < 0) eps = eps.conj();
  eps_ = eps;
}

Splitting QuadField::split_type(const Integer& l) const {
  if (disc_ % l == 0) return Splitting::Ramified;
  if (l == 2) {
    Integer r = disc_ % 8;
    if (r < 0) r += 8;
    return r == 1 ? Splitting::Split : Splitting::Inert;
  }
  return jacobi(disc_, l) == 1 ? Splitting::Split : Splitting::Inert;
}

std::vector<KPlace> QuadField::places_above(const Integer& l) const {
  std::vector<KPlace> out;
  const std::string ls = l.get_str();
  switch (split_type(l)) {
    case Splitting::Inert: {
      KPlace w;
      w.l = l;
      w.splitting = Splitting::Inert;
      w.ideal = {l, 0};
      w.label = "(" + ls + ")";
      out.push_back(w);
      break;
    }
    case Splitting::Ramified: {
      KPlace w;
      w.l = l;
      w.splitting = Splitting::Ramified;
      Integer b = l == 2 ? ((disc_ / 4) % 2 == 0 ? Integer(0) : Integer(2))
                         : (disc_ % 2 == 0 ? Integer(0) : l);
      w.ideal = {l, b};
      w.label = "r_" + ls;
      out.push_back(w);
      break;
    }
    case Splitting::Split: {
      Integer b1;
      if (l == 2) {
        b1 = 1;
      } else {
        b1 = sqrt_mod(disc_, l);
        if ((b1 - disc_) % 2 != 0) b1 += l;
      }
      b1 = center_mod(b1, l);
      Integer b2 = center_mod(-b1, l);
      if (b2 < b1) std::swap(b1, b2);
      for (int i = 0; i < 2; ++i) {
        KPlace w;
        w.l = l;
        w.splitting = Splitting::Split;
        w.ideal = {l, i == 0 ? b1 : b2};
        w.label = (i == 0 ? "p_" : "q_") + ls;
        out.push_back(w);
      }
      break;
    }
  }
  return out;
}

std::vector<KPlace> QuadField::infinite_places() const {
  std::vector<KPlace> out;
  if (!is_real()) {
    KPlace w;
    w.type = KPlace::Type::Complex;
    w.label = "C";
    out.push_back(w);
    return out;
  }
  for (int i = 0; i < 2; ++i) {
    KPlace w;
    w.type = KPlace::Type::Real;
    w.real_index = i;
    w.label = i == 0 ? "s1" : "s2";
    out.push_back(w);
  }
  return out;
}

QuadIdeal QuadField::prime_power(const QuadIdeal& p, const Integer& l, unsigned j) const {
  if (j == 1) return p;
  if (split_type(l) != Splitting::Split) throw Error(ErrorKind::InvalidArgument, "prime_power needs a split prime");
  Integer q = ipow(l, j);
  Integer r;
  if (l == 2) {
    r = sqrt_mod_2k(disc_, j + 2);
    if ((r - p.b) % 4 != 0) r = -r;
  } else {
    Integer dm = disc_ % q;
    if (dm < 0) dm += q;
    Integer b0 = p.b % l;
    if (b0 < 0) b0 += l;
    r = hensel_sqrt(dm, l, j, b0);
    if ((r - disc_) % 2 != 0) r += q;
  }
  QuadIdeal I{q, center_mod(r, q)};
  if ((I.b * I.b - disc_) % (4 * q) != 0) throw Error(ErrorKind::InternalInconsistency, "prime power normal form");
  return I;
}

std::optional<QuadElem> QuadField::principal_generator(QuadIdeal a) const {
  const Integer norm = a.a;
  QuadElem g;
  QuadIdeal I = reduce(a, &g);
  std::optional<QuadElem> out;
  if (!is_real()) {
    if (I.a == 1) out = g;
  } else {
    const QuadIdeal start = I;
    do {
      if (I.a == 1) {
        out = g;
        break;
      }
      QuadElem s;
      I = rho(I, &s);
      g = g * s;
    } while (!(I == start));
  }
  if (out && abs(out->norm()) != Rational(norm)) {
    throw Error(ErrorKind::InternalInconsistency, "generator norm mismatch");
  }
  return out;
}

std::pair<unsigned, QuadElem> QuadField::class_order_and_generator(const KPlace& p) const {
  if (p.type != KPlace::Type::Finite) throw Error(ErrorKind::InvalidArgument, "finite place expected");
  if (p.splitting == Splitting::Inert) return {1, elem(Rational(p.l))};
  if (p.splitting == Splitting::Ramified) {
    auto g = principal_generator(p.ideal);
    if (!g) throw Error(ErrorKind::OddClassNumberRequired, "ramified prime of order 2 above " + p.l.get_str());
    return {1, *g};
  }
  const unsigned hmax = static_cast<unsigned>(h_.get_ui());
  for (unsigned j = 1; j <= hmax; ++j) {
    if (auto g = principal_generator(prime_power(p.ideal, p.l, j))) return {j, *g};
  }
  throw Error(ErrorKind::BudgetExceeded, "no principal power of " + p.label);
}

bool QuadField::contains(const QuadIdeal& a, const QuadElem& x) const {
  Rational f = disc_ == d_ ? Rational(1) : Rational(2);
  Rational v = 2 * x.y / f;
  Rational u = (x.x - v * Rational(a.b) / 2) / Rational(a.a);
  return v.get_den() == 1 && u.get_den() == 1;
}

LocalField QuadField::completion(const KPlace& w) const {
  switch (w.type) {
    case KPlace::Type::Real: return LocalField::real(d_);
    case KPlace::Type::Complex: throw Error(ErrorKind::InvalidArgument, "complex place has trivial square classes");
    case KPlace::Type::Finite: break;
  }
  switch (w.splitting) {
    case Splitting::Split: return LocalField::base(w.l);
    case Splitting::Inert: return LocalField::unramified(w.l);
    case Splitting::Ramified: return LocalField::quadratic(w.l, d_);
  }
  return LocalField::base(w.l);
}

LElem QuadField::embed(const QuadElem& x, const KPlace& w, int n) const {
  if (w.type == KPlace::Type::Real) return LElem{x.x, w.real_index == 0 ? x.y : -x.y, kExact};
  if (w.type == KPlace::Type::Complex) throw Error(ErrorKind::InvalidArgument, "complex place");
  const Integer& l = w.l;
  if (w.splitting == Splitting::Ramified) return LElem{x.x, x.y, kExact};
  if (x.y == 0) return LElem::of(x.x);
  const int vy = valuation(x.y, l);
  if (w.splitting == Splitting::Split) {
    // root s of disc with s = -b (mod l, or mod 4 at 2)
    Integer s;
    if (l == 2) {
      s = sqrt_mod_2k(disc_, static_cast<unsigned>(n + 1));
      if ((s + w.ideal.b) % 4 != 0) s = -s;
    } else {
      Integer q = ipow(l, static_cast<unsigned>(n));
      Integer dm = disc_ % q;
      if (dm < 0) dm += q;
      Integer s0 = (-w.ideal.b) % l;
      if (s0 < 0) s0 += l;
      s = hensel_sqrt(dm, l, static_cast<unsigned>(n), s0);
    }
    Rational f = disc_ == d_ ? Rational(1) : Rational(2);
    int vf = disc_ == d_ ? 0 : valuation(Integer(2), l);
    return LElem{x.x + x.y * Rational(s) / f, 0, n + vy - vf};
  }
  // inert: sqrt d = c sqrt d0 with c^2 = d/d0
  const Integer d0 = LocalField::canonical_unramified_d(l);
  Rational ratio = Rational(d_) / Rational(d0);
  Integer c;
  if (l == 2) {
    unsigned k = static_cast<unsigned>(n + 1);
    c = sqrt_mod_2k(residue(ratio, ipow(2, k)), k);
  } else {
    Integer q = ipow(l, static_cast<unsigned>(n));
    Integer rm = residue(ratio, q);
    c = hensel_sqrt(rm, l, static_cast<unsigned>(n), sqrt_mod(rm, l));
  }
  return LElem{x.x, x.y * Rational(c), n + vy};
}

BitVec QuadField::localize(const QuadElem& x, const KPlace& w) const {
  if (w.type == KPlace::Type::Complex) return BitVec(0);
  const LocalField L = completion(w);
  return with_precision([&](int n) { return L.square_class(embed(x, w, n)); });
}

SUnitBasis s_unit_basis(const QuadField& K, const std::vector<Integer>& rational_primes) {
  if (K.class_number() % 2 == 0) {
    throw Error(ErrorKind::OddClassNumberRequired, "h(" + K.d().get_str() + ") = " + K.class_number().get_str());
  }
  SUnitBasis B;
  B.gens.push_back(K.torsion_unit());
  B.labels.push_back(K.d() == -1 ? "i" : "-1");
  if (K.is_real()) {
    B.gens.push_back(*K.fundamental_unit());
    B.labels.push_back("eps");
  }
  for (const auto& l : rational_primes) {
    auto places = K.places_above(l);
    if (places.size() == 2) {
      auto [k, x] = K.class_order_and_generator(places[0]);
      (void)k;
      B.gens.push_back(x);
      B.labels.push_back("x" + l.get_str());
      B.gens.push_back(x.conj());
      B.labels.push_back("y" + l.get_str());
    } else {
      auto [k, x] = K.class_order_and_generator(places[0]);
      (void)k;
      B.gens.push_back(x);
      B.labels.push_back(places[0].splitting == Splitting::Inert ? l.get_str() : "x" + l.get_str());
    }
    B.primes.insert(B.primes.end(), places.begin(), places.end());
  }
  return B;
}

SUnitBasis normalize_signs(const QuadField& K, SUnitBasis basis, const std::vector<SignConstraint>& constraints) {
  auto holds = [&](const QuadElem& x, const SignConstraint& c) {
    switch (c.kind) {
      case SignConstraint::Kind::SquareAt: return K.localize(x, c.place).is_zero();
      case SignConstraint::Kind::PositiveNorm: return x.norm() > 0;
      case SignConstraint::Kind::PositiveAtReal: return !K.localize(x, c.place).get(0);
      case SignConstraint::Kind::UnramifiedAt: {
        const LocalField L = K.completion(c.place);
        return K.with_precision([&](int n) { return L.unramified_sqrt(K.embed(x, c.place, n)); });
      }
      case SignConstraint::Kind::ClassAt: return c.accept(K.localize(x, c.place));
    }
    return false;
  };
  for (std::size_t i = 0; i < basis.gens.size(); ++i) {
    std::vector<const SignConstraint*> mine;
    for (const auto& c : constraints) {
      if (c.gen == i) mine.push_back(&c);
    }
    if (mine.empty()) continue;
    std::vector<QuadElem> multipliers{K.elem(1)};
    if (i >= 1) multipliers.push_back(basis.gens[0]);
    if (i >= 2 && K.is_real()) {
      multipliers.push_back(basis.gens[1]);
      multipliers.push_back(basis.gens[0] * basis.gens[1]);
    }
    bool done = false;
    for (const auto& m : multipliers) {
      QuadElem cand = basis.gens[i] * m;
      bool ok = true;
      for (const auto* c : mine) ok = ok && holds(cand, *c);
      if (ok) {
        basis.gens[i] = cand;
        done = true;
        break;
      }
    }
    if (!done) throw Error(ErrorKind::Unsatisfiable, "sign constraints on generator " + basis.labels[i]);
  }
  return basis;
}

}  // namespace redei
