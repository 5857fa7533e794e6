#include "redei/gf2.hpp"

#include <bit>
#include <stdexcept>

#include "redei/errors.hpp"

namespace redei {

void BitVec::set(std::size_t i, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (v) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

bool BitVec::is_zero() const {
  for (auto w : words_) {
    if (w) return false;
  }
  return true;
}

int BitVec::weight() const {
  int w = 0;
  for (auto x : words_) w += std::popcount(x);
  return w;
}

bool BitVec::dot(const BitVec& o) const {
  if (o.n_ != n_) throw Error(ErrorKind::InvalidArgument, "BitVec::dot size mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
  return std::popcount(acc) & 1;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (o.n_ != n_) throw Error(ErrorKind::InvalidArgument, "BitVec xor size mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

BitVec BitVec::append(const BitVec& tail) const {
  BitVec r(n_ + tail.n_);
  for (std::size_t i = 0; i < n_; ++i) r.set(i, get(i));
  for (std::size_t i = 0; i < tail.n_; ++i) r.set(n_ + i, tail.get(i));
  return r;
}

BitVec BitVec::slice(std::size_t from, std::size_t len) const {
  BitVec r(len);
  for (std::size_t i = 0; i < len; ++i) r.set(i, get(from + i));
  return r;
}

std::string BitVec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < n_; ++i) s.push_back(get(i) ? '1' : '0');
  return s;
}

Gf2Matrix::Gf2Matrix(std::vector<BitVec> rows, std::size_t cols) : cols_(cols) {
  for (auto& r : rows) add_row(std::move(r));
}

void Gf2Matrix::add_row(BitVec r) {
  if (r.size() != cols_) throw Error(ErrorKind::InvalidArgument, "row width mismatch");
  rows_.push_back(std::move(r));
}

Gf2Matrix Gf2Matrix::rref() const {
  std::vector<BitVec> m = rows_;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols_ && lead < m.size(); ++c) {
    std::size_t piv = lead;
    while (piv < m.size() && !m[piv].get(c)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[lead], m[piv]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != lead && m[r].get(c)) m[r] ^= m[lead];
    }
    ++lead;
  }
  m.resize(lead);
  return Gf2Matrix(std::move(m), cols_);
}

int Gf2Matrix::rank() const { return static_cast<int>(rref().rows()); }

std::vector<BitVec> Gf2Matrix::nullspace() const {
  Gf2Matrix e = rref();
  std::vector<std::size_t> pivots;
  std::vector<bool> is_pivot(cols_, false);
  for (const auto& r : e.rows_) {
    std::size_t c = 0;
    while (!r.get(c)) ++c;
    pivots.push_back(c);
    is_pivot[c] = true;
  }
  std::vector<BitVec> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    BitVec v(cols_);
    v.set(f);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (e.rows_[i].get(f)) v.set(pivots[i]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool Gf2Matrix::in_row_span(const BitVec& v) const {
  BitVec x;
  return solve_combination(v, x);
}

bool Gf2Matrix::solve_combination(const BitVec& v, BitVec& x) const {
  // Augment every row with its own index tag and eliminate.
  const std::size_t n = rows_.size();
  std::vector<BitVec> m;
  m.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVec tag(n);
    tag.set(i);
    m.push_back(rows_[i].append(tag));
  }
  BitVec target = v.append(BitVec(n));
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols_ && lead < m.size(); ++c) {
    std::size_t piv = lead;
    while (piv < m.size() && !m[piv].get(c)) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[lead], m[piv]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != lead && m[r].get(c)) m[r] ^= m[lead];
    }
    if (target.get(c)) target ^= m[lead];
    ++lead;
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    if (target.get(c)) return false;
  }
  x = target.slice(cols_, n);
  return true;
}

BitVec Gf2Matrix::apply(const BitVec& v) const {
  BitVec r(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) r.set(i, rows_[i].dot(v));
  return r;
}

}  // namespace redei
