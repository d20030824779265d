#include "cyclotomic.hpp"

#include <stdexcept>

namespace k3lat::detail {

namespace {

Poly multiply(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Exact division by x^d - 1.
Poly divide_xd_minus_one(const Poly& p, std::size_t d) {
  if (p.size() <= d) throw std::logic_error("cyclotomic: degree too small for division");
  std::size_t qdeg = p.size() - 1 - d;
  Poly q(qdeg + 1);
  for (std::size_t k = qdeg + 1; k-- > 0;) {
    q[k] = p[k + d];
    if (k + d <= qdeg) q[k] += q[k + d];
  }
  // Verify: remainder p - (x^d - 1) q must vanish.
  Poly check(p.size());
  for (std::size_t k = 0; k <= qdeg; ++k) {
    check[k + d] += q[k];
    check[k] -= q[k];
  }
  if (check != p) throw std::logic_error("cyclotomic: inexact division");
  return q;
}

Poly xd_minus_one(std::size_t d) {
  Poly p(d + 1);
  p[0] = -1;
  p[d] = 1;
  return p;
}

int moebius(long n) {
  int mu = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

Poly cyclotomic_poly(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
  long rad = 1, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    rad *= p;
    while (m % p == 0) m /= p;
  }
  if (m > 1) rad *= m;
  std::vector<long> divisors;
  for (long d = 1; d <= rad; ++d)
    if (rad % d == 0) divisors.push_back(d);
  Poly num{1};
  for (long d : divisors)
    if (moebius(rad / d) == 1) num = multiply(num, xd_minus_one(static_cast<std::size_t>(d)));
  for (long d : divisors)
    if (moebius(rad / d) == -1) num = divide_xd_minus_one(num, static_cast<std::size_t>(d));
  long stretch = n / rad;
  Poly out((num.size() - 1) * static_cast<std::size_t>(stretch) + 1);
  for (std::size_t i = 0; i < num.size(); ++i) out[i * static_cast<std::size_t>(stretch)] = num[i];
  return out;
}

CyclotomicRing::CyclotomicRing(long n) : n_(n), phi_(cyclotomic_poly(n)) {
  for (std::size_t i = 0; i + 1 < phi_.size(); ++i)
    if (phi_[i] != 0) terms_.emplace_back(i, phi_[i]);
}

Poly CyclotomicRing::reduce(const Poly& p) const {
  Poly a(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < p.size(); ++i) a[i % static_cast<std::size_t>(n_)] += p[i];
  const std::size_t deg = phi_.size() - 1;
  for (std::size_t k = a.size(); k-- > deg;) {
    if (a[k] == 0) continue;
    mpz_class c = a[k];
    a[k] = 0;
    for (const auto& [j, coef] : terms_) a[k - deg + j] -= c * coef;
  }
  a.resize(deg);
  return a;
}

bool CyclotomicRing::equal(const Poly& a, const Poly& b) const { return reduce(a) == reduce(b); }

}  // namespace k3lat::detail
