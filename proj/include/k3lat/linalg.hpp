#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat {

using Z = mpz_class;
using Q = mpq_class;
using Vec = std::vector<Q>;

class LinalgError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Dense row-major matrix of exact rationals.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_ints(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  Q& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Q& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  std::vector<Vec> row_list() const;
  void set_row(std::size_t i, const Vec& v);

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Q& s) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_integral() const;
  bool is_symmetric() const;
  bool is_square() const { return r_ == c_; }

  std::string str() const;

private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Q> a_;
};

// Vector helpers. Vectors are row vectors; v*M means row-vector times matrix.
Vec vec_from_ints(const std::vector<long>& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Q& s, const Vec& a);
Vec operator-(const Vec& a);
Vec vec_mul(const Vec& v, const Matrix& m);
Vec mat_vec(const Matrix& m, const Vec& v);
Q dot(const Vec& a, const Vec& b);
Q bilinear(const Vec& a, const Matrix& g, const Vec& b);
bool is_zero(const Vec& v);
bool is_integral(const Vec& v);
Z common_denominator(const Vec& v);
std::string vec_str(const Vec& v);

Q det(const Matrix& m);
std::size_t rank(const Matrix& m);
Matrix inverse(const Matrix& m);
// Reduced row echelon form over Q; returns pivot columns through `pivots`.
Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots = nullptr);

// Basis of the right kernel {v : m v = 0} over Q; empty iff m has full column rank.
std::vector<Vec> kernel_basis(const Matrix& m);
// Basis of the left kernel {v : v m = 0}.
std::vector<Vec> left_kernel_basis(const Matrix& m);

struct SmithForm {
  Matrix U, D, V;  // U * m * V = D
  Matrix V_inverse;
  std::vector<Z> diagonal() const;
};

// Smith normal form of an integer matrix with unimodular transforms.
SmithForm smith_normal_form(const Matrix& m);

// Row-style Hermite normal form of an integer matrix: nonzero rows only,
// pivots positive, entries above each pivot reduced into [0, pivot).
Matrix hermite_normal_form(const Matrix& m);

// Canonical echelon basis of the Z-span of rational rows.
std::vector<Vec> hermite_basis(const std::vector<Vec>& rows);

// Canonical echelon basis of (Q-span of rows) intersected with Z^n.
std::vector<Vec> hermite_saturate(const std::vector<Vec>& rows);

// Coefficients c with c * basis = v, if v lies in the Q-span of the basis rows.
std::optional<Vec> solve_in_span(const std::vector<Vec>& basis, const Vec& v);

// Exact integer square root helpers used by enumeration code.
Z floor_sqrt(const Z& n);

}  // namespace k3lat
