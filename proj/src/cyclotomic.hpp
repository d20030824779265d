#pragma once

// Exact arithmetic in Z[zeta_N], elements stored as integer polynomials of degree < N.

#include <gmpxx.h>

#include <vector>

namespace k3lat::detail {

using Poly = std::vector<mpz_class>;

// N-th cyclotomic polynomial (monic, integer coefficients).
Poly cyclotomic_poly(long n);

class CyclotomicRing {
public:
  explicit CyclotomicRing(long n);
  long order() const { return n_; }
  // Reduce a polynomial (exponents taken mod N first) to its canonical representative
  // of degree < phi(N).
  Poly reduce(const Poly& p) const;
  bool equal(const Poly& a, const Poly& b) const;

private:
  long n_;
  Poly phi_;
  std::vector<std::pair<std::size_t, mpz_class>> terms_;  // nonzero terms of phi_ below the top
};

}  // namespace k3lat::detail
