/**
 * test_linalg.cpp — exact elimination over Fq.
 *
 * Hand-checked solves (small systems with unique, multiple, and no
 * solutions), rank-nullity on seeded random matrices, inverse round trips,
 * eventual-image behaviour on nilpotent / invertible / mixed operators.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hecke/fq.hpp"
#include "hecke/linalg.hpp"

using namespace hecke;

namespace {

Mat random_mat(std::mt19937& rng, int rows, int cols, uint32_t p, uint32_t e) {
  uint64_t q = Fq::make(p, e, 0).q();
  std::uniform_int_distribution<uint64_t> d(0, q - 1);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Fq::from_rep(p, e, d(rng));
  return m;
}

}  // namespace

TEST_CASE("row_reduce puts a hand example into RREF") {
  // over F_5: [[2,4],[1,2]] has rank 1 (row2 = 3*row1)
  Mat m = mat_from({{2, 4}, {1, 2}}, 5);
  auto pivots = row_reduce(m);
  REQUIRE(pivots.size() == 1u);
  CHECK(pivots[0] == 0);
  CHECK(m(0, 0) == Fq::make(5, 1, 1));
  CHECK(m(0, 1) == Fq::make(5, 1, 2));
  CHECK(is_zero_mat(m.row(1)));
}

TEST_CASE("rank_solve: unique solution") {
  // a * x = b over F_7 with a invertible
  Mat a = mat_from({{1, 2}, {3, 4}}, 7);
  Mat b = mat_from({{5}, {6}}, 7);
  auto rs = rank_solve(a, b);
  REQUIRE(rs.consistent);
  CHECK(rs.rank == 2);
  CHECK(rs.kernel.cols() == 0);
  CHECK(mat_eq(a * rs.particular, b));
}

TEST_CASE("rank_solve: inconsistent system") {
  Mat a = mat_from({{1, 2}, {2, 4}}, 5);  // rank 1, column space span{(1,2)}
  Mat b = mat_from({{1}, {0}}, 5);        // (1,0) not in column space
  auto rs = rank_solve(a, b);
  CHECK(!rs.consistent);
}

TEST_CASE("rank_solve: solution space with kernel") {
  Mat a = mat_from({{1, 2}, {2, 4}}, 5);
  Mat b = mat_from({{3}, {6}}, 5);
  auto rs = rank_solve(a, b);
  REQUIRE(rs.consistent);
  CHECK(rs.rank == 1);
  REQUIRE(rs.kernel.cols() == 1);
  CHECK(mat_eq(a * rs.particular, b));
  CHECK(is_zero_mat(a * rs.kernel));
  CHECK(!is_zero_mat(rs.kernel));
}

TEST_CASE("rank-nullity on seeded random matrices") {
  std::mt19937 rng(20260825);
  for (auto [p, e] : {std::pair<uint32_t, uint32_t>{2, 1},
                      {3, 1},
                      {5, 1},
                      {5, 2},
                      {7, 1}}) {
    for (int trial = 0; trial < 25; ++trial) {
      int rows = 1 + static_cast<int>(rng() % 6);
      int cols = 1 + static_cast<int>(rng() % 6);
      Mat a = random_mat(rng, rows, cols, p, e);
      Mat k = left_kernel(a);
      CHECK(rank(a) + k.rows() == rows);
      if (k.rows() > 0) CHECK(is_zero_mat(k * a));
      CHECK(rank(k) == k.rows());  // kernel basis is independent
      // row_space_basis spans: every original row has coordinates in it
      Mat basis = row_space_basis(a);
      CHECK(rank(basis) == basis.rows());
      Mat c = coords_in_row_basis(basis, a);
      CHECK(mat_eq(c * basis, a));
    }
  }
}

TEST_CASE("inverse round trip and failure") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Mat a = random_mat(rng, 4, 4, 5, 1);
    if (rank(a) < 4) {
      CHECK_THROWS_AS((void)inverse(a), std::domain_error);
      continue;
    }
    Mat ai = inverse(a);
    CHECK(mat_eq(a * ai, identity(4, 5)));
    CHECK(mat_eq(ai * a, identity(4, 5)));
  }
}

TEST_CASE("coords_in_row_basis reconstructs vectors") {
  Mat basis = mat_from({{1, 0, 2}, {0, 1, 3}}, 7);
  Mat vecs = mat_from({{2, 3, 6}, {4, 0, 1}}, 7);
  Mat c = coords_in_row_basis(basis, vecs);
  CHECK(mat_eq(c * basis, vecs));
}

TEST_CASE("eventual_image: nilpotent operator") {
  Mat a = mat_from({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}, 5);
  auto ei = eventual_image(a);
  CHECK(ei.stabilized);
  CHECK(ei.basis.rows() == 0);
  CHECK(ei.invertible_on_image);  // vacuously, on the zero space
}

TEST_CASE("eventual_image: invertible operator") {
  Mat a = mat_from({{0, 1}, {1, 0}}, 5);
  auto ei = eventual_image(a);
  CHECK(ei.stabilized);
  CHECK(ei.basis.rows() == 2);
  CHECK(ei.invertible_on_image);
  // restriction in the chosen basis is conjugate to a itself here
  CHECK(rank(ei.restricted) == 2);
}

TEST_CASE("eventual_image: mixed operator splits off the nilpotent part") {
  // block diag(nilpotent Jordan 2-cell, identity 1-cell)
  Mat a = mat_from({{0, 1, 0}, {0, 0, 0}, {0, 0, 1}}, 5);
  auto ei = eventual_image(a);
  CHECK(ei.stabilized);
  REQUIRE(ei.basis.rows() == 1);
  CHECK(ei.invertible_on_image);
  // the eventual image is span(e3), fixed by a
  Mat img = ei.basis * a;
  CHECK(mat_eq(img, ei.restricted * ei.basis));
  CHECK(ei.restricted(0, 0) == Fq::make(5, 1, 1));
}

TEST_CASE("eventual_image commutes with the operator action") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    Mat a = random_mat(rng, 5, 5, 3, 1);
    auto ei = eventual_image(a);
    CHECK(ei.stabilized);
    // basis * a must land back inside the image as restricted * basis,
    // and the restriction of a stabilized operator is invertible
    if (ei.basis.rows() > 0) {
      CHECK(mat_eq(ei.basis * a, ei.restricted * ei.basis));
      CHECK(rank(ei.restricted) == ei.restricted.rows());
      CHECK(ei.invertible_on_image);
    }
  }
}

TEST_CASE("direct_sum builds block diagonals") {
  Mat a = mat_from({{1, 2}, {3, 4}}, 5);
  Mat b = mat_from({{2}}, 5);
  Mat s = direct_sum(a, b);
  REQUIRE(s.rows() == 3);
  REQUIRE(s.cols() == 3);
  CHECK(s(0, 1) == Fq::make(5, 1, 2));
  CHECK(s(2, 2) == Fq::make(5, 1, 2));
  CHECK(s(0, 2).is_zero());
  CHECK(s(2, 0).is_zero());
}
