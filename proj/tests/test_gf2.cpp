#include <doctest.h>

#include <random>

#include "redei/gf2.hpp"

using namespace redei;

namespace {

BitVec random_vec(std::mt19937_64& rng, std::size_t n, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, bit(rng));
  return v;
}

}  // namespace

TEST_CASE("bit vectors") {
  BitVec v(130);
  v.set(0);
  v.set(64);
  v.set(129);
  CHECK(v.weight() == 3);
  CHECK(v.slice(64, 66).get(0));
  CHECK(v.append(v).size() == 260);
  CHECK((v ^ v).is_zero());
  CHECK(BitVec(5).to_string() == "00000");
}

TEST_CASE("rank, nullspace and solve on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 40, cols = 1 + rng() % 90;
    Gf2Matrix M(cols);
    for (std::size_t i = 0; i < rows; ++i) M.add_row(random_vec(rng, cols, trial % 2 ? 0.5 : 0.1));
    const int r = M.rank();
    CHECK(r == M.rref().rank());
    CHECK(r == static_cast<int>(M.rref().rows()));
    auto ns = M.nullspace();
    CHECK(static_cast<int>(ns.size()) == static_cast<int>(cols) - r);
    for (const auto& x : ns)
      for (const auto& row : M.row_list()) CHECK_FALSE(row.dot(x));

    // A random combination of rows lies in the span and is recovered.
    BitVec pick = random_vec(rng, rows);
    BitVec target(cols);
    for (std::size_t i = 0; i < rows; ++i)
      if (pick.get(i)) target ^= M.row(i);
    CHECK(M.in_row_span(target));
    BitVec x;
    REQUIRE(M.solve_combination(target, x));
    BitVec back(cols);
    for (std::size_t i = 0; i < rows; ++i)
      if (x.get(i)) back ^= M.row(i);
    CHECK(back == target);
  }
}
