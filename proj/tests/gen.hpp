#pragma once

#include <random>

#include "k3lat/linalg.hpp"

// Seeded generators for property tests.
namespace gen {

using k3lat::Matrix;
using k3lat::Q;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }
};

inline Matrix integer_matrix(Rng& r, std::size_t rows, std::size_t cols, long bound) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = r.range(-bound, bound);
  return m;
}

inline Matrix symmetric_matrix(Rng& r, std::size_t n, long bound) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = r.range(-bound, bound);
  return m;
}

// Product of random elementary integer operations: determinant +-1.
inline Matrix unimodular(Rng& r, std::size_t n, int steps) {
  Matrix m = Matrix::identity(n);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = static_cast<std::size_t>(r.range(0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(r.range(0, static_cast<long>(n) - 1));
    if (i == j) {
      for (std::size_t k = 0; k < n; ++k) m(i, k) = -m(i, k);
      continue;
    }
    long c = r.range(-2, 2);
    for (std::size_t k = 0; k < n; ++k) m(i, k) += c * m(j, k);
  }
  return m;
}

// Leibniz expansion, used as an independent determinant.
inline Q leibniz_det(const Matrix& m) {
  std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  Q total = 0;
  do {
    Q term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inv;
    total += inv % 2 ? -term : term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

}  // namespace gen
