#include "k3lat/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace k3lat {

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& row : rows) {
    if (row.size() != c_) throw LinalgError("ragged matrix literal");
    for (long x : row) a_.emplace_back(x);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw LinalgError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_ints(const std::vector<std::vector<long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw LinalgError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vec Matrix::row(std::size_t i) const {
  return Vec(a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_));
}

Vec Matrix::col(std::size_t j) const {
  Vec v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(r_);
  for (std::size_t i = 0; i < r_; ++i) out.push_back(row(i));
  return out;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
  if (v.size() != c_) throw LinalgError("row length mismatch");
  for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
}

Matrix Matrix::transpose() const {
  Matrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

// Entries scaled to integers by the common denominator of the matrix.
std::vector<Z> scaled_entries(const std::vector<Q>& a, Z& den) {
  den = 1;
  for (const auto& x : a)
    if (x.get_den() != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Z> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (den == 1) {
      out[i] = a[i].get_num();
    } else {
      mpz_divexact(out[i].get_mpz_t(), den.get_mpz_t(), a[i].get_den_mpz_t());
      out[i] *= a[i].get_num();
    }
  }
  return out;
}

}  // namespace

Matrix Matrix::operator*(const Matrix& o) const {
  if (c_ != o.r_) throw LinalgError("dimension mismatch in product");
  Matrix p(r_, o.c_);
  if (r_ * c_ * o.c_ >= 64) {
    Z da, db;
    std::vector<Z> a = scaled_entries(a_, da), b = scaled_entries(o.a_, db);
    Z den = da * db;
    Z acc;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < o.c_; ++j) {
        acc = 0;
        for (std::size_t k = 0; k < c_; ++k)
          if (sgn(a[i * c_ + k])) mpz_addmul(acc.get_mpz_t(), a[i * c_ + k].get_mpz_t(), b[k * o.c_ + j].get_mpz_t());
        Q& x = p(i, j);
        mpz_set(x.get_num_mpz_t(), acc.get_mpz_t());
        mpz_set(x.get_den_mpz_t(), den.get_mpz_t());
        x.canonicalize();
      }
    return p;
  }
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Q& x = (*this)(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
    }
  return p;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw LinalgError("dimension mismatch in sum");
  Matrix s(r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] + o.a_[i];
  return s;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw LinalgError("dimension mismatch in difference");
  Matrix s(r_, c_);
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] = a_[i] - o.a_[i];
  return s;
}

Matrix Matrix::scaled(const Q& s) const {
  Matrix m(*this);
  for (auto& x : m.a_) x *= s;
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
}

bool Matrix::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Q& x) { return x.get_den() == 1; });
}

bool Matrix::is_symmetric() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = i + 1; j < c_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r_; ++i) {
    os << (i ? ",\n [" : "[");
    for (std::size_t j = 0; j < c_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Vec vec_from_ints(const std::vector<long>& v) {
  Vec out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw LinalgError("vector length mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw LinalgError("vector length mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const Q& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vec vec_mul(const Vec& v, const Matrix& m) {
  if (v.size() != m.rows()) throw LinalgError("dimension mismatch in vec_mul");
  Vec r(m.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

Vec mat_vec(const Matrix& m, const Vec& v) {
  if (v.size() != m.cols()) throw LinalgError("dimension mismatch in mat_vec");
  Vec r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

Q dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw LinalgError("vector length mismatch");
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Q bilinear(const Vec& a, const Matrix& g, const Vec& b) { return dot(vec_mul(a, g), b); }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& x) { return sgn(x) == 0; });
}

bool is_integral(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Q& x) { return x.get_den() == 1; });
}

Z common_denominator(const Vec& v) {
  Z l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

Matrix rref(const Matrix& m, std::vector<std::size_t>* pivots) {
  Matrix a(m);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Q inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      Q f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return a;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

namespace {

// Fraction-free elimination (Bareiss) on an integer matrix.
Z det_bareiss(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Z>> a(n, std::vector<Z>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).get_num();
  Z prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

Q det(const Matrix& m) {
  if (!m.is_square()) throw LinalgError("det of non-square matrix");
  if (m.rows() == 0) return 1;
  if (m.is_integral()) return Q(det_bareiss(m));
  Matrix a(m);
  std::size_t n = a.rows();
  Q d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Q f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw LinalgError("inverse of non-square matrix");
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  Matrix r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) throw LinalgError("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  std::vector<std::size_t> piv;
  Matrix r = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> left_kernel_basis(const Matrix& m) { return kernel_basis(m.transpose()); }

namespace {

using ZRow = std::vector<Z>;
using ZMat = std::vector<ZRow>;

ZMat to_zmat(const Matrix& m) {
  ZMat z(m.rows(), ZRow(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw LinalgError("integer matrix expected");
      z[i][j] = m(i, j).get_num();
    }
  return z;
}

Matrix from_zmat(const ZMat& z, std::size_t cols) {
  Matrix m(z.size(), cols);
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = z[i][j];
  return m;
}

ZMat zidentity(std::size_t n) {
  ZMat z(n, ZRow(n));
  for (std::size_t i = 0; i < n; ++i) z[i][i] = 1;
  return z;
}

void row_axpy(ZMat& a, std::size_t dst, std::size_t src, const Z& f) {
  for (std::size_t j = 0; j < a[dst].size(); ++j) a[dst][j] -= f * a[src][j];
}

void col_axpy(ZMat& a, std::size_t dst, std::size_t src, const Z& f) {
  for (auto& row : a) row[dst] -= f * row[src];
}

void col_swap(ZMat& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

}  // namespace

std::vector<Z> SmithForm::diagonal() const {
  std::vector<Z> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i).get_num());
  return d;
}

SmithForm smith_normal_form(const Matrix& m) {
  ZMat a = to_zmat(m);
  const std::size_t nr = m.rows(), nc = m.cols();
  ZMat U = zidentity(nr), V = zidentity(nc), Vi = zidentity(nc);
  for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
    bool finished = false;
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (t,t).
      std::size_t bi = nr, bj = nc;
      for (std::size_t i = t; i < nr; ++i)
        for (std::size_t j = t; j < nc; ++j)
          if (sgn(a[i][j]) != 0 && (bi == nr || mpz_cmpabs(a[i][j].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi == nr) {
        finished = true;
        break;
      }
      if (bi != t) {
        std::swap(a[bi], a[t]);
        std::swap(U[bi], U[t]);
      }
      if (bj != t) {
        col_swap(a, bj, t);
        col_swap(V, bj, t);
        std::swap(Vi[bj], Vi[t]);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < nr; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        Z q = a[i][t] / a[t][t];
        row_axpy(a, i, t, q);
        row_axpy(U, i, t, q);
        if (sgn(a[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < nc; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        Z q = a[t][j] / a[t][t];
        col_axpy(a, j, t, q);
        col_axpy(V, j, t, q);
        row_axpy(Vi, t, j, -q);
        if (sgn(a[t][j]) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < nr && divides; ++i)
        for (std::size_t j = t + 1; j < nc; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = 0; k < nc; ++k) a[t][k] += a[i][k];
            for (std::size_t k = 0; k < nr; ++k) U[t][k] += U[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (finished) break;
    if (sgn(a[t][t]) < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : U[t]) x = -x;
    }
  }
  return SmithForm{from_zmat(U, nr), from_zmat(a, nc), from_zmat(V, nc), from_zmat(Vi, nc)};
}

Matrix hermite_normal_form(const Matrix& m) {
  ZMat a = to_zmat(m);
  const std::size_t nr = m.rows(), nc = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    while (true) {
      std::size_t best = nr;
      for (std::size_t i = r; i < nr; ++i)
        if (sgn(a[i][c]) != 0 && (best == nr || mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0)) best = i;
      if (best == nr) break;
      if (best != r) std::swap(a[best], a[r]);
      bool clean = true;
      for (std::size_t i = r + 1; i < nr; ++i) {
        if (sgn(a[i][c]) == 0) continue;
        Z q = a[i][c] / a[r][c];
        row_axpy(a, i, r, q);
        if (sgn(a[i][c]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(a[r][c]) == 0) continue;
    if (sgn(a[r][c]) < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (sgn(q) != 0) row_axpy(a, i, r, q);
    }
    ++r;
  }
  a.resize(r);
  return from_zmat(a, nc);
}

namespace {

std::pair<Matrix, Z> scaled_integer_rows(const std::vector<Vec>& rows) {
  std::size_t n = rows.empty() ? 0 : rows[0].size();
  Z l = 1;
  for (const auto& r : rows) {
    if (r.size() != n) throw LinalgError("rows of unequal length");
    Z d = common_denominator(r);
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  Matrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j] * Q(l);
  return {m, l};
}

}  // namespace

std::vector<Vec> hermite_basis(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  auto [m, l] = scaled_integer_rows(rows);
  Matrix h = hermite_normal_form(m);
  std::vector<Vec> out;
  Q inv = Q(1) / Q(l);
  for (std::size_t i = 0; i < h.rows(); ++i) out.push_back(inv * h.row(i));
  return out;
}

std::vector<Vec> hermite_saturate(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  auto [m, l] = scaled_integer_rows(rows);
  SmithForm s = smith_normal_form(m);
  std::size_t r = 0;
  for (const auto& d : s.diagonal())
    if (sgn(d) != 0) ++r;
  const Matrix& vinv = s.V_inverse;
  Matrix basis(r, m.cols());
  for (std::size_t i = 0; i < r; ++i) basis.set_row(i, vinv.row(i));
  Matrix h = hermite_normal_form(basis);
  return h.row_list();
}

std::optional<Vec> solve_in_span(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) return is_zero(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
  std::size_t k = basis.size(), n = v.size();
  Matrix aug(n, k + 1);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) aug(i, j) = basis[j][i];
  for (std::size_t i = 0; i < n; ++i) aug(i, k) = v[i];
  std::vector<std::size_t> piv;
  Matrix r = rref(aug, &piv);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  Vec c(k);
  for (std::size_t i = 0; i < piv.size(); ++i) c[piv[i]] = r(i, k);
  return c;
}

Z floor_sqrt(const Z& n) {
  if (sgn(n) < 0) throw LinalgError("square root of negative number");
  Z r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace k3lat
