#include <doctest.h>

#include <algorithm>

#include "gen.hpp"
#include "k3lat/linalg.hpp"

using namespace k3lat;

TEST_CASE("determinant of small fixed matrices") {
  CHECK(det(Matrix{{2, 1}, {1, 2}}) == 3);
  CHECK(det(Matrix{{0, 1}, {1, 0}}) == -1);
  CHECK(det(Matrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
  Matrix h(2, 2);
  h(0, 0) = Q(1, 2);
  h(1, 1) = Q(2, 3);
  CHECK(det(h) == Q(1, 3));
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  gen::Rng r(11);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = static_cast<std::size_t>(r.range(1, 6));
    Matrix m = gen::integer_matrix(r, n, n, 5);
    CHECK(det(m) == gen::leibniz_det(m));
  }
}

TEST_CASE("inverse, rank and kernel") {
  gen::Rng r(12);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(r.range(1, 7));
    Matrix m = gen::integer_matrix(r, n, n, 4);
    if (det(m) != 0) {
      CHECK(m * inverse(m) == Matrix::identity(n));
      CHECK(rank(m) == n);
    }
    Matrix w = gen::integer_matrix(r, n, n + 2, 3);
    auto ker = kernel_basis(w);
    CHECK(ker.size() + rank(w) == n + 2);
    for (const auto& v : ker) CHECK(is_zero(mat_vec(w, v)));
    auto left = left_kernel_basis(w);
    CHECK(left.size() + rank(w) == n);
    for (const auto& v : left) CHECK(is_zero(vec_mul(v, w)));
  }
}

TEST_CASE("Smith normal form: transforms, inverse and divisibility") {
  gen::Rng r(13);
  for (int t = 0; t < 80; ++t) {
    std::size_t rows = static_cast<std::size_t>(r.range(1, 6)), cols = static_cast<std::size_t>(r.range(1, 6));
    Matrix m = gen::integer_matrix(r, rows, cols, 9);
    SmithForm s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(s.V * s.V_inverse == Matrix::identity(cols));
    CHECK(abs(det(s.U)) == 1);
    CHECK(abs(det(s.V)) == 1);
    CHECK(s.U.is_integral());
    CHECK(s.V.is_integral());
    CHECK(s.V_inverse.is_integral());
    auto d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
  }
}

TEST_CASE("Smith diagonal of a unimodular conjugate is unchanged") {
  gen::Rng r(14);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = static_cast<std::size_t>(r.range(2, 5));
    Matrix d(n, n);
    long a = 1;
    for (std::size_t i = 0; i < n; ++i) {
      a *= r.range(1, 3);
      d(i, i) = a;
    }
    Matrix m = gen::unimodular(r, n, 12) * d * gen::unimodular(r, n, 12);
    auto diag = smith_normal_form(m).diagonal();
    for (std::size_t i = 0; i < n; ++i) CHECK(diag[i] == d(i, i).get_num());
  }
}

TEST_CASE("Hermite normal form is canonical for the row span") {
  gen::Rng r(15);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(r.range(1, 5));
    Matrix m = gen::integer_matrix(r, n, n, 6);
    if (det(m) == 0) continue;
    Matrix h = hermite_normal_form(m);
    CHECK(h == hermite_normal_form(gen::unimodular(r, n, 15) * m));
    CHECK(abs(det(h)) == abs(det(m)));
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(h(i, j) == 0);
  }
}

TEST_CASE("hermite_saturate and solve_in_span") {
  std::vector<Vec> rows{vec_from_ints({2, 0, 2}), vec_from_ints({0, 3, 3})};
  auto sat = hermite_saturate(rows);
  REQUIRE(sat.size() == 2);
  auto c = solve_in_span(sat, vec_from_ints({1, 0, 1}));
  REQUIRE(c.has_value());
  CHECK(is_integral(*c));
  CHECK(!solve_in_span(sat, vec_from_ints({1, 0, 0})).has_value());
  auto span = hermite_basis(rows);
  auto c2 = solve_in_span(span, vec_from_ints({1, 0, 1}));
  REQUIRE(c2.has_value());
  CHECK(!is_integral(*c2));
}

TEST_CASE("floor_sqrt") {
  for (long n = 0; n < 500; ++n) {
    Z s = floor_sqrt(Z(n));
    CHECK(s * s <= n);
    CHECK((s + 1) * (s + 1) > n);
  }
}
