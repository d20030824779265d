#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "k3lat/discform.hpp"

namespace k3lat {

namespace {

using LVec = std::vector<long>;
using LMat = std::vector<LVec>;

int definite_sign(const Lattice& l) {
  Signature s = l.signature();
  if (s.pos == static_cast<int>(l.rank())) return 1;
  if (s.neg == static_cast<int>(l.rank())) return -1;
  throw DiscFormError("lattice " + l.name() + " is not definite");
}

LMat to_long(const Matrix& m, long scale = 1) {
  LMat out(m.rows(), LVec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Q v = m(i, j) * Q(scale);
      if (v.get_den() != 1 || !v.get_num().fits_slong_p())
        throw DiscFormError("isometry search: entry not a machine integer");
      out[i][j] = v.get_num().get_si();
    }
  return out;
}

LVec to_long(const Vec& v) {
  LVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw DiscFormError("isometry search: vector not integral");
    out[i] = v[i].get_num().get_si();
  }
  return out;
}

Vec to_vec(const LVec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

LVec row_times(const LVec& v, const LMat& m) {
  LVec r(m[0].size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i])
      for (std::size_t j = 0; j < r.size(); ++j) r[j] += v[i] * m[i][j];
  return r;
}

long ldot(const LVec& a, const LVec& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Fincke-Pohst enumeration of x != 0 with x P x^T <= bound for positive definite P.
std::vector<LVec> enumerate_short(const Matrix& p, const Q& bound) {
  const std::size_t n = p.rows();
  // Quadratic completion: Q(x) = sum_i qd[i] (x_i + sum_{j>i} qo[i][j] x_j)^2.
  std::vector<Q> qd(n);
  std::vector<std::vector<Q>> qo(n, std::vector<Q>(n));
  Matrix a(p);
  for (std::size_t i = 0; i < n; ++i) {
    qd[i] = a(i, i);
    if (sgn(qd[i]) <= 0) throw DiscFormError("short vectors: form is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) qo[i][j] = a(i, j) / qd[i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = i + 1; k < n; ++k) a(j, k) -= qd[i] * qo[i][j] * qo[i][k];
  }
  std::vector<LVec> out;
  LVec x(n, 0);
  std::function<void(std::size_t, const Q&)> rec = [&](std::size_t lvl, const Q& remaining) {
    const std::size_t i = lvl;
    Q c = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j]) c -= qo[i][j] * Q(x[j]);
    auto fits = [&](long t) {
      Q d = Q(t) - c;
      return qd[i] * d * d <= remaining;
    };
    Z fl;
    mpz_fdiv_q(fl.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
    const long start = fl.get_si();
    std::vector<long> vals;
    for (long t = start; fits(t); --t) vals.push_back(t);
    for (long t = start + 1; fits(t); ++t) vals.push_back(t);
    for (long t : vals) {
      x[i] = t;
      Q d = Q(t) - c;
      Q rem = remaining - qd[i] * d * d;
      if (i == 0) {
        if (std::any_of(x.begin(), x.end(), [](long v) { return v != 0; })) out.push_back(x);
      } else {
        rec(i - 1, rem);
      }
    }
    x[i] = 0;
  };
  if (n) rec(n - 1, bound);
  std::sort(out.begin(), out.end());
  return out;
}

bool saturated_extension(const std::vector<Vec>& rows) {
  return hermite_saturate(rows) == hermite_basis(rows);
}

std::vector<Vec> auto_search_basis(const Matrix& p) {
  const std::size_t n = p.rows();
  Q top = 0;
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, p(i, i));
  auto vecs = enumerate_short(p, top);
  std::vector<std::pair<long, LVec>> by_norm;
  LMat pl = to_long(p);
  for (const auto& v : vecs) by_norm.emplace_back(ldot(row_times(v, pl), v), v);
  std::stable_sort(by_norm.begin(), by_norm.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec> basis;
  for (const auto& [norm, v] : by_norm) {
    if (basis.size() == n) break;
    std::vector<Vec> trial(basis);
    trial.push_back(to_vec(v));
    if (rank(Matrix::from_rows(trial, n)) != trial.size()) continue;
    if (!saturated_extension(trial)) continue;
    basis = std::move(trial);
  }
  if (basis.size() != n) return Matrix::identity(n).row_list();
  return basis;
}

}  // namespace

std::vector<Vec> short_vectors(const Lattice& l, const Z& bound) {
  int s = definite_sign(l);
  std::vector<Vec> out;
  for (const auto& v : enumerate_short(l.gram().scaled(s), Q(bound))) out.push_back(to_vec(v));
  return out;
}

IsometrySearchResult isometry_search(const Lattice& l, const IsometrySearchConfig& cfg) {
  const int sign = definite_sign(l);
  const std::size_t n = l.rank();
  const Matrix pq = l.gram().scaled(sign);
  const LMat p = to_long(pq);
  std::vector<Vec> basis = cfg.search_basis.empty() ? auto_search_basis(pq) : cfg.search_basis;
  Matrix w = Matrix::from_rows(basis, n);
  if (basis.size() != n || !w.is_integral() || abs(det(w)) != 1)
    throw DiscFormError("isometry search: search basis is not a Z-basis");
  const Matrix winv = inverse(w);
  const LMat wl = to_long(w);
  LMat gw(n, LVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    LVec wp = row_times(wl[i], p);
    for (std::size_t j = 0; j < n; ++j) gw[i][j] = ldot(wp, wl[j]);
  }
  long top = 0;
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, gw[i][i]);
  struct Cand {
    LVec v, vp;
  };
  std::map<long, std::vector<Cand>> by_norm;
  for (const auto& v : enumerate_short(pq, Q(top))) {
    LVec vp = row_times(v, p);
    by_norm[ldot(vp, v)].push_back({v, vp});
  }

  IsometrySearchResult res;
  std::set<std::vector<Q>> seen;
  auto add = [&](const Matrix& m) {
    std::vector<Q> key;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) key.push_back(m(i, j));
    if (seen.insert(key).second) res.isometries.push_back(m);
  };
  add(Matrix::identity(n));
  add(Matrix::identity(n).scaled(-1));
  for (const auto& s : cfg.seeds) {
    if (!is_isometry(l, s)) throw DiscFormError("isometry search: seed is not an isometry");
    add(s);
  }

  std::vector<Cand> fixed;
  for (const auto& v : cfg.fixed_images) {
    LVec lv = to_long(v);
    fixed.push_back({lv, row_times(lv, p)});
  }
  if (fixed.size() > n) throw DiscFormError("isometry search: too many prescribed images");

  std::vector<const Cand*> img(n, nullptr);
  bool stop = false;
  const std::size_t first_free = fixed.size();
  std::function<bool(std::size_t)> rec = [&](std::size_t lvl) -> bool {
    if (lvl == n) {
      Matrix x(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) x(i, j) = img[i]->v[j];
      add(winv * x);
      if (cfg.first_image_limit == 0 && res.isometries.size() >= cfg.max_isometries) stop = true;
      return true;
    }
    std::vector<const Cand*> options;
    if (lvl < fixed.size()) {
      options.push_back(&fixed[lvl]);
    } else {
      auto it = by_norm.find(gw[lvl][lvl]);
      if (it == by_norm.end()) return false;
      for (const auto& c : it->second) options.push_back(&c);
    }
    std::size_t tried_first = 0;
    bool any = false;
    for (const Cand* c : options) {
      if (stop) return any;
      if (++res.nodes > cfg.max_nodes) {
        stop = true;
        return any;
      }
      bool ok = ldot(c->vp, c->v) == gw[lvl][lvl];
      for (std::size_t j = 0; j < lvl && ok; ++j) ok = ldot(c->vp, img[j]->v) == gw[lvl][j];
      if (!ok) continue;
      if (cfg.first_image_limit && lvl == first_free && tried_first++ >= cfg.first_image_limit)
        return any;
      img[lvl] = c;
      bool found = rec(lvl + 1);
      any = any || found;
      // In limited mode each first image contributes a single isometry.
      if (found && cfg.first_image_limit && lvl > first_free) return true;
    }
    return any;
  };
  rec(0);
  res.complete = !stop && cfg.first_image_limit == 0;
  return res;
}

}  // namespace k3lat
