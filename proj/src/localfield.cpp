#include "redei/localfield.hpp"

#include <algorithm>
#include <cmath>

#include "redei/errors.hpp"

namespace redei {

namespace {

int vq(const Rational& q, const Integer& l) { return valuation(q, l); }

Rational pow_l(const Integer& l, int e) {
  Rational r = Rational(ipow(l, static_cast<unsigned>(std::abs(e))));
  if (e < 0) r = 1 / r;
  return r;
}

long mod_small(const Rational& q, long m) {
  Integer r = residue(q, Integer(m));
  return r.get_si();
}

}  // namespace

LocalField LocalField::real(const Integer& d) {
  if (d <= 0) throw Error(ErrorKind::InvalidArgument, "real field needs d > 0");
  LocalField f;
  f.kind_ = Kind::Real;
  f.d_ = d;
  return f;
}

LocalField LocalField::base(const Integer& l) {
  LocalField f;
  f.kind_ = Kind::Base;
  f.l_ = l;
  f.d_ = 1;
  return f;
}

Integer LocalField::canonical_unramified_d(const Integer& l) {
  if (l == 2) return -3;
  if (l % 4 == 3) return -1;
  Integer n = 2;
  while (jacobi(n, l) != -1) ++n;
  return n;
}

LocalField LocalField::unramified(const Integer& l) { return quadratic(l, canonical_unramified_d(l)); }

LocalField LocalField::quadratic(const Integer& l, const Integer& d) {
  LocalField f;
  f.l_ = l;
  f.d_ = d;
  if (l == 2) {
    long r = mod_small(Rational(d), 8);
    if (r == 1) throw Error(ErrorKind::InvalidArgument, "d is a square in Q_2");
    f.kind_ = r == 5 ? Kind::Unramified : Kind::Ramified;
    if (mpz_odd_p(d.get_mpz_t()) && r % 4 == 1) {
      f.half_basis_ = true;
      f.t_ = 1;
      f.n_ = (d - 1) / 4;
    } else {
      f.t_ = 0;
      f.n_ = d;
    }
    f.build_unit_table();
  } else {
    if (d % l == 0) {
      if ((d / l) % l == 0) throw Error(ErrorKind::InvalidArgument, "d not squarefree at l");
      f.kind_ = Kind::Ramified;
    } else {
      if (jacobi(d, l) == 1) throw Error(ErrorKind::InvalidArgument, "d is a square in Q_l");
      f.kind_ = Kind::Unramified;
    }
  }
  return f;
}

int LocalField::class_dim() const {
  switch (kind_) {
    case Kind::Real: return 1;
    case Kind::Base: return l_ == 2 ? 3 : 2;
    default: return l_ == 2 ? 4 : 2;
  }
}

std::string LocalField::name() const {
  switch (kind_) {
    case Kind::Real: return "R";
    case Kind::Base: return "Q" + l_.get_str();
    default: return "Q" + l_.get_str() + "(sqrt(" + d_.get_str() + "))";
  }
}

void LocalField::build_unit_table() {
  // Units of O/8O in the basis {1, omega}; key = 8a + b.
  auto key_mul = [&](int k1, int k2) {
    long a = k1 / 8, b = k1 % 8, c = k2 / 8, e = k2 % 8;
    long n = mod_small(Rational(n_), 8);
    long x = a * c + n * b * e;
    long y = a * e + b * c + t_ * b * e;
    return static_cast<int>(((x % 8 + 8) % 8) * 8 + (y % 8 + 8) % 8);
  };
  auto is_unit = [&](int k) {
    long a = k / 8, b = k % 8;
    long n = mod_small(Rational(n_), 8);
    return ((a * a + t_ * a * b - n * b * b) % 2 + 2) % 2 == 1;
  };
  unit_coords_.assign(64, -1);
  std::vector<int> subgroup;
  for (int k = 0; k < 64; ++k) {
    if (!is_unit(k)) continue;
    int sq = key_mul(k, k);
    if (unit_coords_[sq] < 0) {
      unit_coords_[sq] = 0;
      subgroup.push_back(sq);
    }
  }
  unit_dim_ = 0;
  for (int k = 0; k < 64; ++k) {
    if (!is_unit(k) || unit_coords_[k] >= 0) continue;
    const int bit = 1 << unit_dim_;
    std::vector<int> added;
    for (int h : subgroup) {
      int g = key_mul(k, h);
      unit_coords_[g] = unit_coords_[h] | bit;
      added.push_back(g);
    }
    subgroup.insert(subgroup.end(), added.begin(), added.end());
    ++unit_dim_;
  }
  if (unit_dim_ != 3) throw Error(ErrorKind::InternalInconsistency, "unit group of " + name());
}

bool LocalField::is_zero(const LElem& a) const { return a.x == 0 && a.y == 0; }

int LocalField::vmin(const LElem& a) const {
  int v = a.prec;
  if (a.x != 0) v = std::min(v, vq(a.x, l_));
  if (a.y != 0) v = std::min(v, vq(a.y, l_));
  return v;
}

LElem LocalField::mul(const LElem& a, const LElem& b) const {
  LElem r{a.x * b.x + Rational(d_) * a.y * b.y, a.x * b.y + a.y * b.x, kExact};
  if (kind_ != Kind::Real && (!a.is_exact() || !b.is_exact())) {
    long pa = a.is_exact() ? kExact : static_cast<long>(a.prec) + vmin(b);
    long pb = b.is_exact() ? kExact : static_cast<long>(b.prec) + vmin(a);
    r.prec = static_cast<int>(std::min<long>({pa, pb, kExact}));
  }
  return r;
}

LElem LocalField::add(const LElem& a, const LElem& b) const {
  return LElem{a.x + b.x, a.y + b.y, std::min(a.prec, b.prec)};
}

LElem LocalField::sub(const LElem& a, const LElem& b) const {
  return LElem{a.x - b.x, a.y - b.y, std::min(a.prec, b.prec)};
}

int LocalField::valuation(const LElem& a) const {
  if (kind_ == Kind::Real) throw Error(ErrorKind::InvalidArgument, "valuation at the real place");
  if (is_zero(a)) {
    throw Error(a.is_exact() ? ErrorKind::Zero : ErrorKind::PrecisionExhausted, "valuation of 0 in " + name());
  }
  if (kind_ == Kind::Base) {
    int v = vq(a.x, l_);
    if (v >= a.prec) throw Error(ErrorKind::PrecisionExhausted, "valuation beyond precision in " + name());
    return v;
  }
  Rational nrm = a.x * a.x - Rational(d_) * a.y * a.y;
  int vn = vq(nrm, l_);
  if (!a.is_exact()) {
    int m = vmin(a);
    if (vn >= a.prec + std::min(m, a.prec)) {
      throw Error(ErrorKind::PrecisionExhausted, "valuation beyond precision in " + name());
    }
  }
  return vn / residue_degree();
}

LElem LocalField::uniformizer() const {
  if (kind_ == Kind::Ramified) {
    if (l_ == 2 && mpz_odd_p(d_.get_mpz_t())) return LElem{1, 1, kExact};
    return LElem{0, 1, kExact};
  }
  return LElem::of(Rational(l_));
}

LElem LocalField::exact_div(const LElem& a, const LElem& b) const {
  Rational nb = b.x * b.x - Rational(d_) * b.y * b.y;
  LElem c = mul(a, conj(b));
  return LElem{c.x / nb, c.y / nb, c.prec};
}

BitVec LocalField::square_class(const LElem& a) const {
  BitVec c(class_dim());
  if (kind_ == Kind::Real) {
    // sign of x + y sqrt(d)
    int sx = sgn(a.x), sy = sgn(a.y);
    int s;
    if (sy == 0) {
      s = sx;
    } else if (sx == 0 || sx == sy) {
      s = sy;
    } else {
      s = (a.x * a.x > Rational(d_) * a.y * a.y) ? sx : sy;
    }
    if (s == 0) throw Error(ErrorKind::Zero, "square class of 0");
    c.set(0, s < 0);
    return c;
  }
  const int v = valuation(a);
  c.set(0, (v % 2) != 0);
  if (kind_ == Kind::Base) {
    Rational u = a.x / pow_l(l_, v);
    int pu = a.is_exact() ? kExact : a.prec - v;
    if (l_ == 2) {
      if (pu < 3) throw Error(ErrorKind::PrecisionExhausted, "unit part in Q2");
      long r = mod_small(u, 8);
      c.set(1, r % 4 == 3);
      c.set(2, r == 3 || r == 5);
    } else {
      if (pu < 1) throw Error(ErrorKind::PrecisionExhausted, "unit part in " + name());
      c.set(1, jacobi(residue(u, l_), l_) == -1);
    }
    return c;
  }
  LElem u = unit_part(a, nullptr);
  if (l_ != 2) {
    Integer res;
    if (kind_ == Kind::Unramified) {
      res = residue(u.x * u.x - Rational(d_) * u.y * u.y, l_);
    } else {
      res = residue(u.x, l_);
    }
    c.set(1, jacobi(res, l_) == -1);
    return c;
  }
  int mask = unit_coords_[residue_key(u)];
  if (mask < 0) throw Error(ErrorKind::InternalInconsistency, "unit part is not a unit in " + name());
  for (int i = 0; i < unit_dim_; ++i) c.set(1 + i, (mask >> i) & 1);
  return c;
}

LElem LocalField::unit_part(const LElem& a, int* vout) const {
  const int v = valuation(a);
  if (vout) *vout = v;
  if (kind_ == Kind::Base) {
    int pu = a.is_exact() ? kExact : a.prec - v;
    if (pu < (l_ == 2 ? 3 : 1)) throw Error(ErrorKind::PrecisionExhausted, "unit part in " + name());
    return LElem::of(a.x / pow_l(l_, v));
  }
  LElem pi = uniformizer();
  LElem piv = LElem::of(1);
  for (int i = 0; i < std::abs(v); ++i) piv = mul(piv, pi);
  LElem inv = v >= 0 ? exact_div(LElem::of(1), piv) : piv;
  LElem u = mul(LElem{a.x, a.y, kExact}, inv);
  int pu = a.is_exact() ? kExact : a.prec + vmin(inv);
  if (pu < (l_ == 2 ? 3 : 1)) throw Error(ErrorKind::PrecisionExhausted, "unit part in " + name());
  return u;
}

bool LocalField::unramified_sqrt(const LElem& a) const {
  if (kind_ == Kind::Real) return true;
  int v = 0;
  LElem u = unit_part(a, &v);
  if (v % 2 != 0) return false;
  if (l_ != 2) return true;
  return is_square_mod(u, 2 * ram_index());
}

int LocalField::residue_key(const LElem& u) const {
  Rational a = u.x, b = u.y;
  if (half_basis_) {
    a = u.x - u.y;
    b = 2 * u.y;
  }
  return static_cast<int>(mod_small(a, 8) * 8 + mod_small(b, 8));
}

bool LocalField::is_square_mod(const LElem& u, int m) const {
  if (kind_ == Kind::Real) throw Error(ErrorKind::InvalidArgument, "is_square_mod at the real place");
  if (m <= 0) return true;
  const int k = (m + ram_index() - 1) / ram_index();
  const Integer modulus = ipow(l_, static_cast<unsigned>(k));
  const int n = degree();
  if (std::pow(modulus.get_d(), n) > 4e6) throw Error(ErrorKind::BudgetExceeded, "is_square_mod search too large");
  auto close = [&](const LElem& w) {
    LElem diff = sub(u, mul(w, w));
    if (is_zero(diff)) return true;
    return valuation(diff) >= m;
  };
  if (n == 1) {
    for (Integer a = 0; a < modulus; ++a) {
      if (close(LElem::of(Rational(a)))) return true;
    }
    return false;
  }
  for (Integer a = 0; a < modulus; ++a) {
    for (Integer b = 0; b < modulus; ++b) {
      LElem w = half_basis_ ? LElem{Rational(a) + Rational(b) / 2, Rational(b) / 2, kExact}
                            : LElem{Rational(a), Rational(b), kExact};
      if (close(w)) return true;
    }
  }
  return false;
}

}  // namespace redei
