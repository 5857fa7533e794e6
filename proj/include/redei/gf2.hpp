#pragma once

// Dense linear algebra over F_2.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace redei {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v = true);
  void flip(std::size_t i) { words_[i / 64] ^= (std::uint64_t{1} << (i % 64)); }
  bool is_zero() const;
  int weight() const;
  bool dot(const BitVec& o) const;
  BitVec& operator^=(const BitVec& o);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;
  /// Concatenation.
  BitVec append(const BitVec& tail) const;
  BitVec slice(std::size_t from, std::size_t len) const;
  std::string to_string() const;  // "0110..."

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

class Gf2Matrix {
 public:
  explicit Gf2Matrix(std::size_t cols = 0) : cols_(cols) {}
  Gf2Matrix(std::vector<BitVec> rows, std::size_t cols);

  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_.size(); }
  const BitVec& row(std::size_t i) const { return rows_[i]; }
  const std::vector<BitVec>& row_list() const { return rows_; }
  void add_row(BitVec r);

  int rank() const;
  /// Reduced row echelon form of the row space, zero rows dropped.
  Gf2Matrix rref() const;
  /// Basis of {x : row . x = 0 for every row}.
  std::vector<BitVec> nullspace() const;
  bool in_row_span(const BitVec& v) const;
  /// x with x . rows = v (x indexes rows), if v is in the row span.
  bool solve_combination(const BitVec& v, BitVec& x) const;
  /// M v, one bit per row.
  BitVec apply(const BitVec& v) const;

 private:
  std::size_t cols_;
  std::vector<BitVec> rows_;
};

}  // namespace redei
