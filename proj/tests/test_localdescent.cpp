#include <doctest.h>

#include "redei/errors.hpp"
#include "redei/localdescent.hpp"
#include "redei/selmer.hpp"

using namespace redei;

namespace {

BitVec rational_row(const LocalField& v, const std::vector<long>& row) {
  std::vector<LElem> coords;
  for (long x : row) coords.push_back(LElem::of(Rational(x)));
  return local_vector(v, coords);
}

int span_dim(const std::vector<BitVec>& rows, std::size_t cols) { return Gf2Matrix(rows, cols).rank(); }

}  // namespace

TEST_CASE("local square class groups") {
  CHECK(LocalField::base(2).class_dim() == 3);
  CHECK(LocalField::base(3).class_dim() == 2);
  CHECK(LocalField::real().class_dim() == 1);
  CHECK(LocalField::unramified(3).class_dim() == 2);
  CHECK(LocalField::unramified(2).class_dim() == 4);
  CHECK(LocalField::unramified(3).d() == -1);
  const LocalField Q2 = LocalField::base(2);
  CHECK(Q2.is_square(LElem::of(17)));
  CHECK_FALSE(Q2.is_square(LElem::of(5)));
  CHECK(LocalField::unramified(3).is_square(LElem::of(-1)));
  CHECK(LocalField::unramified(3).is_square(LElem::of(2)));
}

TEST_CASE("target dimensions") {
  CHECK(target_dim(LocalField::base(2)) == 6);
  CHECK(target_dim(LocalField::base(3)) == 4);
  CHECK(target_dim(LocalField::unramified(3)) == 4);
  CHECK(target_dim(LocalField::unramified(2)) == 8);
  CHECK(target_dim(LocalField::real()) == 2);
  CHECK(target_dim(LocalField::base(2), 1) == 3);
  CHECK(target_dim(LocalField::real(), 1) == 1);
}

TEST_CASE("local images reach the target and contain the Weierstrass rows") {
  for (long c : {1L, 5L, 7L, 23L, 241L}) {
    const QuinticModel model = QuinticModel::scaled(c);
    std::vector<LocalField> fields{LocalField::real(), LocalField::base(2), LocalField::base(3)};
    if (c > 3) fields.push_back(LocalField::base(c));
    if (c == 1) fields.push_back(LocalField::unramified(3));
    for (const auto& v : fields) {
      const LocalImage& img = cached_local_image(model, v);
      CHECK_MESSAGE(img.dim() == target_dim(v), "c=" << c << " at " << v.name());
      for (int i = 0; i < model.k(); ++i) {
        std::vector<long> row;
        for (const auto& x : weierstrass_row(model, i)) row.push_back(x.get_si());
        BitVec w = rational_row(v, row);
        CHECK(membership(img, w));
        CHECK(in_hyperplane(w, v.class_dim()));
      }
      for (const auto& b : img.basis) CHECK(in_hyperplane(b, v.class_dim()));
    }
  }
}

TEST_CASE("Weierstrass rows of C over Q_3(i) span only two dimensions") {
  // Every rational 3-adic unit is a square in Q_3(i); only classes of 3 survive.
  const QuinticModel C = QuinticModel::scaled(1);
  const LocalField F = LocalField::unramified(3);
  std::vector<BitVec> rows;
  for (int i = 0; i < 5; ++i) {
    std::vector<long> row;
    for (const auto& x : weierstrass_row(C, i)) row.push_back(x.get_si());
    rows.push_back(rational_row(F, row));
  }
  CHECK(span_dim(rows, 5 * F.class_dim()) == 2);
  CHECK(cached_local_image(C, F).dim() == 4);
}

TEST_CASE("delta of a local point and errors") {
  const QuinticModel C = QuinticModel::scaled(1);
  const LocalField Q2 = LocalField::base(2);
  // f(1/4) = (9/4)(5/4)(1/4)(-3/4)(-7/4): a 2-adic square since 9*5*3*7 = 945 = 1 mod 8.
  LocalPoint P{LElem::of(Rational(1, 4)), false, 0, "1/4"};
  BitVec d = delta_point(P, C, Q2);
  CHECK(membership(cached_local_image(C, Q2), d));
  // f(3) = 5*4*3*2*1 = 120 = 8 * 15, odd valuation: not a point.
  LocalPoint bad{LElem::of(Rational(3)), false, 0, "3"};
  CHECK_THROWS_AS(delta_point(bad, C, Q2), Error);
}

TEST_CASE("membership rejects (1,2,-1,6,-3) at 3") {
  const QuinticModel C = QuinticModel::scaled(1);
  const LocalField Q3 = LocalField::base(3);
  CHECK_FALSE(membership(cached_local_image(C, Q3), rational_row(Q3, {1, 2, -1, 6, -3})));
  CHECK(membership(cached_local_image(C, LocalField::base(2)), rational_row(LocalField::base(2), {1, 2, -1, 6, -3})));
}

TEST_CASE("search budget") {
  // With no candidates beyond the Weierstrass classes the 2-adic image stays short.
  SearchBudget none;
  none.per_level = 0;
  try {
    local_image(QuinticModel::scaled(1), LocalField::base(2), none);
    FAIL("expected SearchBudgetExhausted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SearchBudgetExhausted);
  }
}
