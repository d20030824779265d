#include <algorithm>
#include <map>
#include <sstream>

#include "k3lat/discform.hpp"

namespace k3lat {

namespace {

int valuation(const Z& n, long p) {
  if (n == 0) throw DiscFormError("valuation of zero");
  Z m = abs(n);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const Q& q, long p) { return valuation(q.get_num(), p) - valuation(q.get_den(), p); }

int legendre(const Z& a, long p) {
  Z r = a % p;
  if (r < 0) r += p;
  if (r == 0) throw DiscFormError("legendre: not a unit");
  Z e;
  mpz_class pp = p, ex = (p - 1) / 2;
  mpz_powm(e.get_mpz_t(), r.get_mpz_t(), ex.get_mpz_t(), pp.get_mpz_t());
  return e == 1 ? 1 : -1;
}

}  // namespace

std::vector<JordanConstituent> odd_jordan_symbol(const Matrix& gram, long p) {
  if (p == 2) throw DiscFormError("odd_jordan_symbol: p must be odd");
  Matrix a(gram);
  const std::size_t n = a.rows();
  std::vector<Q> diag;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // Entry of minimal valuation among the remaining block.
    int best = 1 << 30;
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      for (std::size_t j = i; j < n; ++j) {
        if (done[j] || sgn(a(i, j)) == 0) continue;
        int v = valuation(a(i, j), p);
        if (v < best || (v == best && i == j && bi != bj)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == n) throw DiscFormError("odd_jordan_symbol: degenerate Gram matrix");
    if (bi != bj) {
      for (std::size_t k = 0; k < n; ++k) a(bi, k) += a(bj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, bi) += a(k, bj);
    }
    const std::size_t k = bi;
    const Q piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] || j == k || sgn(a(j, k)) == 0) continue;
      Q f = a(j, k) / piv;
      for (std::size_t t = 0; t < n; ++t) a(j, t) -= f * a(k, t);
      for (std::size_t t = 0; t < n; ++t) a(t, j) -= f * a(t, k);
    }
    diag.push_back(piv);
    done[k] = true;
  }
  std::map<int, std::pair<int, int>> blocks;
  for (const auto& d : diag) {
    int v = valuation(d, p);
    Q unit = d;
    Z pv = 1;
    for (int i = 0; i < std::abs(v); ++i) pv *= p;
    if (v > 0) unit /= Q(pv);
    else unit *= Q(pv);
    auto& [r, l] = blocks.try_emplace(v, 0, 1).first->second;
    ++r;
    l *= legendre(unit.get_num() * unit.get_den(), p);
  }
  std::vector<JordanConstituent> out;
  for (const auto& [v, rl] : blocks) out.push_back({v, rl.first, rl.second});
  return out;
}

nlohmann::json GenusComparison::to_json() const { return {{"same", same}, {"detail", detail}}; }

GenusData genus_data(const Lattice& l) {
  GenusData g;
  g.rank = l.rank();
  g.signature = l.signature();
  g.det = l.det();
  g.even = l.is_even();
  const Z d = abs(g.det.get_num());
  if (sgn(d) == 0) return g;
  for (long p : prime_divisors(d))
    if (p != 2) g.odd_symbols.emplace_back(p, odd_jordan_symbol(l.gram(), p));
  if (d % 2 == 0) {
    if (!g.even) throw DiscFormError("compare_genus: odd lattices with even determinant unsupported");
    g.two_primary = primary_part(discriminant_form(l), 2);
  }
  return g;
}

GenusComparison compare_genus(const Lattice& a, const Lattice& b) {
  return compare_genus(genus_data(a), genus_data(b));
}

GenusComparison compare_genus(const GenusData& a, const GenusData& b) {
  GenusComparison res;
  std::ostringstream os;
  if (a.rank != b.rank) {
    os << "rank " << a.rank << " vs " << b.rank;
    res.detail = os.str();
    return res;
  }
  if (a.signature != b.signature) {
    res.detail = "signature " + a.signature.str() + " vs " + b.signature.str();
    return res;
  }
  if (a.det != b.det) {
    res.detail = "determinant " + rational_str(a.det) + " vs " + rational_str(b.det);
    return res;
  }
  if (a.even != b.even) {
    res.detail = "parity differs";
    return res;
  }
  os << "rank " << a.rank << ", signature " << a.signature.str() << ", det " << rational_str(a.det);
  for (std::size_t i = 0; i < a.odd_symbols.size(); ++i) {
    long p = a.odd_symbols[i].first;
    if (i >= b.odd_symbols.size() || a.odd_symbols[i] != b.odd_symbols[i]) {
      os << "; " << p << "-adic Jordan symbols differ";
      res.detail = os.str();
      return res;
    }
    os << "; " << p << "-adic symbols agree";
  }
  if (a.two_primary && b.two_primary) {
    auto iso = fqf_isomorphic(*a.two_primary, *b.two_primary);
    if (!iso.decided) {
      os << "; 2-primary comparison undecided";
      res.detail = os.str();
      return res;
    }
    if (!iso.isomorphic) {
      os << "; 2-primary discriminant forms differ";
      res.detail = os.str();
      return res;
    }
    os << "; 2-primary discriminant forms isometric";
  }
  res.same = true;
  res.detail = os.str();
  return res;
}

}  // namespace k3lat
