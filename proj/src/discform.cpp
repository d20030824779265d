#include "k3lat/discform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "cyclotomic.hpp"
#include "scaled_form.hpp"

namespace k3lat {

Q mod2(const Q& x) {
  Q r = x;
  r.canonicalize();
  mpz_class two = 2 * r.get_den();
  mpz_class num = r.get_num() % two;
  if (num < 0) num += two;
  Q out(num, r.get_den());
  out.canonicalize();
  return out;
}

Q mod1(const Q& x) {
  Q r = x;
  r.canonicalize();
  mpz_class num = r.get_num() % r.get_den();
  if (num < 0) num += r.get_den();
  Q out(num, r.get_den());
  out.canonicalize();
  return out;
}

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<long> orders, std::vector<Q> q_gens,
                                         Matrix b_gens)
    : orders_(std::move(orders)), qg_(std::move(q_gens)), b_(std::move(b_gens)) {
  const std::size_t r = orders_.size();
  if (qg_.size() != r || b_.rows() != r || b_.cols() != r)
    throw DiscFormError("finite form: inconsistent generator data");
  for (long o : orders_)
    if (o < 2) throw DiscFormError("finite form: generator orders must be at least 2");
  for (auto& v : qg_) v = mod2(v);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) b_(i, j) = mod1(b_(i, j));
  if (!b_.is_symmetric()) throw DiscFormError("finite form: bilinear matrix not symmetric");
  for (std::size_t i = 0; i < r; ++i) {
    if (mod1(qg_[i]) != b_(i, i)) throw DiscFormError("finite form: q and b disagree on a generator");
    if (mod2(Q(orders_[i]) * Q(orders_[i]) * qg_[i]) != 0)
      throw DiscFormError("finite form: q not well defined on a generator");
    for (std::size_t j = 0; j < r; ++j)
      if (mod1(Q(orders_[i]) * b_(i, j)) != 0)
        throw DiscFormError("finite form: b not well defined on a generator");
  }
}

std::uint64_t FiniteQuadraticForm::size() const {
  std::uint64_t s = 1;
  for (long o : orders_) s *= static_cast<std::uint64_t>(o);
  return s;
}

Q FiniteQuadraticForm::q(const Elem& x) const {
  Q s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    s += Q(x[i]) * Q(x[i]) * qg_[i];
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[j]) s += 2 * Q(x[i]) * Q(x[j]) * b_(i, j);
  }
  return mod2(s);
}

Q FiniteQuadraticForm::b(const Elem& x, const Elem& y) const {
  Q s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j]) s += Q(x[i]) * Q(y[j]) * b_(i, j);
  }
  return mod1(s);
}

Elem FiniteQuadraticForm::reduce(const Elem& x) const {
  Elem r(x);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] %= orders_[i];
    if (r[i] < 0) r[i] += orders_[i];
  }
  return r;
}

Elem FiniteQuadraticForm::add(const Elem& x, const Elem& y) const {
  Elem r(x.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (x[i] + y[i]) % orders_[i];
  return reduce(r);
}

Elem FiniteQuadraticForm::scale(long n, const Elem& x) const {
  Elem r(x.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (n % orders_[i]) * x[i] % orders_[i];
  return reduce(r);
}

long FiniteQuadraticForm::order_of(const Elem& x) const {
  long o = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    long g = std::gcd(x[i] % orders_[i], orders_[i]);
    o = std::lcm(o, orders_[i] / g);
  }
  return o;
}

Elem FiniteQuadraticForm::element(std::uint64_t index) const {
  Elem x(orders_.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<long>(index % static_cast<std::uint64_t>(orders_[i]));
    index /= static_cast<std::uint64_t>(orders_[i]);
  }
  return x;
}

std::uint64_t FiniteQuadraticForm::index_of(const Elem& x) const {
  std::uint64_t idx = 0;
  for (std::size_t i = x.size(); i-- > 0;)
    idx = idx * static_cast<std::uint64_t>(orders_[i]) + static_cast<std::uint64_t>(x[i]);
  return idx;
}

FiniteQuadraticForm FiniteQuadraticForm::negated() const {
  std::vector<Q> q;
  for (const auto& v : qg_) q.push_back(-v);
  return FiniteQuadraticForm(orders_, q, b_.scaled(-1));
}

FiniteQuadraticForm FiniteQuadraticForm::direct_sum(const FiniteQuadraticForm& o) const {
  std::vector<long> ord(orders_);
  ord.insert(ord.end(), o.orders_.begin(), o.orders_.end());
  std::vector<Q> q(qg_);
  q.insert(q.end(), o.qg_.begin(), o.qg_.end());
  const std::size_t r = ngens(), s = o.ngens();
  Matrix b(r + s, r + s);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) b(i, j) = b_(i, j);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) b(r + i, r + j) = o.b_(i, j);
  return FiniteQuadraticForm(ord, q, b);
}

bool FiniteQuadraticForm::is_elementary(long p) const {
  return std::all_of(orders_.begin(), orders_.end(), [p](long o) { return o == p; });
}

bool FiniteQuadraticForm::is_nondegenerate() const {
  const std::uint64_t n = size();
  for (std::uint64_t k = 1; k < n; ++k) {
    Elem x = element(k);
    bool radical = true;
    for (std::size_t i = 0; i < ngens() && radical; ++i) {
      Elem e = zero();
      e[i] = 1;
      if (b(x, e) != 0) radical = false;
    }
    if (radical) return false;
  }
  return true;
}

std::vector<std::vector<long>> FiniteQuadraticForm::fp_gram(long p) const {
  if (!is_elementary(p)) throw DiscFormError("fp_gram: form is not p-elementary");
  const std::size_t r = ngens();
  std::vector<std::vector<long>> g(r, std::vector<long>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Q v = Q(p) * b_(i, j);
      v.canonicalize();
      g[i][j] = v.get_num().get_si() % p;
    }
  return g;
}

namespace detail {

ScaledForm::ScaledForm(const FiniteQuadraticForm& f) : orders(f.orders()) {
  Z d = 1;
  for (const auto& v : f.qgens()) d = lcm(d, Q(v).get_den());
  for (std::size_t i = 0; i < f.ngens(); ++i)
    for (std::size_t j = 0; j < f.ngens(); ++j) d = lcm(d, f.bmat()(i, j).get_den());
  den = d.get_si();
  const std::size_t r = f.ngens();
  qn.resize(r);
  bn.assign(r, std::vector<long>(r));
  for (std::size_t i = 0; i < r; ++i) {
    Q v = f.qgens()[i] * Q(den);
    qn[i] = v.get_num().get_si();
    for (std::size_t j = 0; j < r; ++j) {
      Q w = f.bmat()(i, j) * Q(den);
      bn[i][j] = w.get_num().get_si();
    }
  }
}

long ScaledForm::q(const Elem& x) const {
  const long m2 = 2 * den;
  long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    s = (s + (x[i] * x[i] % m2) * qn[i]) % m2;
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[j]) s = (s + 2 * ((x[i] * x[j] % den) * bn[i][j] % den)) % m2;
  }
  return s;
}

long ScaledForm::b(const Elem& x, const Elem& y) const {
  long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j]) s = (s + (x[i] * y[j] % den) * bn[i][j]) % den;
  }
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Discriminant groups

Elem DiscriminantGroup::class_of(const Vec& v) const {
  Vec w = mat_vec(v_inverse, v);
  Elem x(nontrivial.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Q c = w[i] * Q(smith_diag[i]);
    c.canonicalize();
    if (c.get_den() != 1) throw DiscFormError("class_of: vector is not in the dual lattice");
    if (k < nontrivial.size() && nontrivial[k] == i) {
      Z r = c.get_num() % smith_diag[i];
      if (r < 0) r += smith_diag[i];
      x[k++] = r.get_si();
    }
  }
  return x;
}

Vec DiscriminantGroup::lift(const Elem& x) const {
  Vec v(lattice.rank());
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (x[k]) v = v + Q(x[k]) * gens[k];
  return v;
}

DiscriminantGroup discriminant_group(const Lattice& l) {
  if (l.degenerate()) throw DiscFormError("discriminant group of degenerate lattice " + l.name());
  if (!l.is_even()) throw DiscFormError("discriminant form requires an even lattice: " + l.name());
  DiscriminantGroup dg;
  dg.lattice = l;
  const std::size_t n = l.rank();
  if (n == 0) {
    dg.form = FiniteQuadraticForm({}, {}, Matrix(0, 0));
    return dg;
  }
  SmithForm s = smith_normal_form(l.gram());
  dg.smith_diag = s.diagonal();
  dg.v_inverse = s.V_inverse;
  std::vector<long> orders;
  for (std::size_t i = 0; i < n; ++i) {
    Z d = abs(dg.smith_diag[i]);
    dg.smith_diag[i] = d;
    if (d > 1) {
      dg.nontrivial.push_back(i);
      orders.push_back(d.get_si());
      dg.gens.push_back(Q(1, d) * s.V.col(i));
    }
  }
  const std::size_t r = dg.gens.size();
  std::vector<Q> q(r);
  Matrix b(r, r);
  std::vector<Vec> image(r);
  for (std::size_t i = 0; i < r; ++i) image[i] = vec_mul(dg.gens[i], l.gram());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) b(i, j) = b(j, i) = dot(image[i], dg.gens[j]);
    q[i] = b(i, i);
  }
  dg.form = FiniteQuadraticForm(orders, q, b);
  return dg;
}

FiniteQuadraticForm discriminant_form(const Lattice& l) { return discriminant_group(l).form; }

FiniteQuadraticForm discriminant_form(const RelativeLattice& l) {
  return discriminant_form(l.as_lattice());
}

// ---------------------------------------------------------------------------
// Gauss sums

namespace {

long squarefree_part(std::uint64_t n) {
  long s = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2) s *= static_cast<long>(p);
  }
  if (n > 1) s *= static_cast<long>(n);
  return s;
}

}  // namespace

int milgram_invariant(const FiniteQuadraticForm& f) {
  const std::uint64_t size = f.size();
  // Multiply by the Gauss sum of <m>, which is sqrt(m) exp(2 pi i / 8), with m chosen
  // so that |A| m is a square; the product is then an integer times an 8th root of unity.
  long sf = squarefree_part(size);
  long m = (sf % 2 == 0) ? sf : 4 * sf;
  detail::ScaledForm sc(f);
  long n_ring = std::lcm(std::lcm(2 * sc.den, 2 * m), 8L);
  std::vector<mpz_class> gf(static_cast<std::size_t>(n_ring));
  const long step_f = n_ring / (2 * sc.den);
  for (std::uint64_t k = 0; k < size; ++k) gf[static_cast<std::size_t>(sc.q(f.element(k)) * step_f)] += 1;
  std::vector<long> gc(static_cast<std::size_t>(n_ring));
  const long step_c = n_ring / (2 * m);
  for (long k = 0; k < m; ++k) gc[static_cast<std::size_t>((k * k % (2 * m)) * step_c)] += 1;
  detail::Poly prod(static_cast<std::size_t>(n_ring));
  for (std::size_t i = 0; i < gf.size(); ++i) {
    if (gf[i] == 0) continue;
    for (std::size_t j = 0; j < gc.size(); ++j)
      if (gc[j]) prod[(i + j) % static_cast<std::size_t>(n_ring)] += gf[i] * gc[j];
  }
  detail::CyclotomicRing ring(n_ring);
  detail::Poly reduced = ring.reduce(prod);
  Z root = floor_sqrt(Z(static_cast<unsigned long>(size)) * Z(m));
  for (int t = 0; t < 8; ++t) {
    detail::Poly target(static_cast<std::size_t>(n_ring));
    target[static_cast<std::size_t>(t * n_ring / 8)] = root;
    if (ring.reduce(target) == reduced) return ((t - 1) % 8 + 8) % 8;
  }
  throw DiscFormError("milgram_invariant: Gauss sum is not of the expected shape (degenerate form?)");
}

// ---------------------------------------------------------------------------
// Isomorphism of finite forms

nlohmann::json FqfIsoResult::to_json() const {
  nlohmann::json j;
  j["isomorphic"] = isomorphic;
  j["decided"] = decided;
  j["method"] = method;
  if (witness) j["witness"] = *witness;
  else j["witness"] = nullptr;
  return j;
}

bool verify_fqf_witness(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g,
                        const std::vector<Elem>& images) {
  if (images.size() != f.ngens() || f.size() != g.size()) return false;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].size() != g.ngens()) return false;
    if (f.orders()[i] % g.order_of(images[i]) != 0) return false;
    if (g.q(images[i]) != f.qgens()[i]) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (g.b(images[i], images[j]) != f.bmat()(i, j)) return false;
  }
  return f.is_nondegenerate();
}

int det_class_mod3(const FiniteQuadraticForm& f) {
  auto g = f.fp_gram(3);
  Matrix m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = g[i][j];
  Z d = det(m).get_num() % 3;
  if (d < 0) d += 3;
  if (d == 0) throw DiscFormError("det_class_mod3: degenerate form");
  return d == 1 ? 1 : -1;
}

std::vector<long> prime_divisors(Z n) {
  n = abs(n);
  std::vector<long> ps;
  for (long p = 2; Z(p) * Z(p) <= n; ++p) {
    if (n % p != 0) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n.get_si());
  return ps;
}

namespace {

long p_power_part(long n, long p) {
  long q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

struct PrimaryPart {
  FiniteQuadraticForm form;
  std::vector<Elem> gens_in_parent;
  std::vector<std::size_t> parent_index;  // generator of the parent each one comes from
};

PrimaryPart primary_part_embedded(const FiniteQuadraticForm& f, long p) {
  PrimaryPart pp;
  std::vector<long> orders;
  std::vector<Q> q;
  for (std::size_t i = 0; i < f.ngens(); ++i) {
    long pk = p_power_part(f.orders()[i], p);
    if (pk == 1) continue;
    Elem e = f.zero();
    e[i] = f.orders()[i] / pk;
    pp.gens_in_parent.push_back(e);
    pp.parent_index.push_back(i);
    orders.push_back(pk);
    q.push_back(f.q(e));
  }
  Matrix b(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i)
    for (std::size_t j = 0; j < orders.size(); ++j)
      b(i, j) = f.b(pp.gens_in_parent[i], pp.gens_in_parent[j]);
  pp.form = FiniteQuadraticForm(orders, q, b);
  return pp;
}

enum class SearchOutcome { Found, Exhausted, Budget };

// Generator-image search for an isometry f -> g of equal-size p-groups.
SearchOutcome search_isometry(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g,
                              std::uint64_t budget, std::uint64_t& nodes,
                              std::vector<Elem>& images) {
  detail::ScaledForm sf(f), sg(g);
  const long den = std::lcm(sf.den, sg.den);
  const long kf = den / sf.den, kg = den / sg.den;
  const std::uint64_t n = g.size();
  std::vector<Elem> elems;
  std::vector<long> ord, qv;
  elems.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    Elem y = g.element(k);
    elems.push_back(y);
    ord.push_back(g.order_of(y));
    qv.push_back(sg.q(y) * kg);
  }
  const std::size_t r = f.ngens();
  // Larger generator orders first: they are the most constrained.
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return f.orders()[a] > f.orders()[b]; });
  std::vector<std::vector<std::size_t>> cand(r);
  for (std::size_t lvl = 0; lvl < r; ++lvl) {
    std::size_t i = perm[lvl];
    long qt = sf.qn[i] * kf;
    for (std::uint64_t k = 0; k < n; ++k)
      if (ord[k] == f.orders()[i] && qv[k] == qt) cand[lvl].push_back(k);
  }
  std::vector<std::size_t> chosen(r);
  bool out_of_budget = false;
  std::function<bool(std::size_t)> rec = [&](std::size_t lvl) -> bool {
    if (lvl == r) return true;
    const std::size_t i = perm[lvl];
    for (std::size_t k : cand[lvl]) {
      if (++nodes > budget) {
        out_of_budget = true;
        return false;
      }
      bool ok = true;
      for (std::size_t pl = 0; pl < lvl && ok; ++pl) {
        const std::size_t j = perm[pl];
        if (sg.b(elems[k], elems[chosen[pl]]) * kg != sf.bn[i][j] * kf) ok = false;
      }
      if (!ok) continue;
      chosen[lvl] = k;
      if (rec(lvl + 1)) return true;
      if (out_of_budget) return false;
    }
    return false;
  };
  if (rec(0)) {
    images.assign(r, Elem());
    for (std::size_t lvl = 0; lvl < r; ++lvl) images[perm[lvl]] = elems[chosen[lvl]];
    return SearchOutcome::Found;
  }
  return out_of_budget ? SearchOutcome::Budget : SearchOutcome::Exhausted;
}

std::vector<long> sorted_orders(const FiniteQuadraticForm& f) {
  std::vector<long> o(f.orders());
  std::sort(o.begin(), o.end());
  return o;
}

long inverse_mod(long a, long m) {
  mpz_class r;
  mpz_class aa = a, mm = m;
  if (!mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t()))
    throw DiscFormError("inverse_mod: not invertible");
  return r.get_si();
}

}  // namespace

FiniteQuadraticForm primary_part(const FiniteQuadraticForm& f, long p) {
  return primary_part_embedded(f, p).form;
}

FqfIsoResult fqf_isomorphic(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g,
                            std::uint64_t budget) {
  FqfIsoResult res;
  if (f.size() != g.size()) {
    res.decided = true;
    res.method = "order";
    return res;
  }
  if (f.size() == 1) {
    res.decided = res.isomorphic = true;
    res.method = "trivial";
    res.witness = std::vector<Elem>(f.ngens());
    return res;
  }
  if (f.is_elementary(3) && g.is_elementary(3)) {
    res.method = "3-elementary invariants";
    res.decided = true;
    res.isomorphic = f.ngens() == g.ngens() && det_class_mod3(f) == det_class_mod3(g) &&
                     milgram_invariant(f) == milgram_invariant(g);
    if (res.isomorphic) {
      std::uint64_t nodes = 0;
      std::vector<Elem> img;
      if (search_isometry(f, g, budget, nodes, img) == SearchOutcome::Found) res.witness = img;
    }
    return res;
  }
  res.method = "generator search";
  std::vector<Elem> total(f.ngens(), g.zero());
  for (long p : prime_divisors(Z(static_cast<unsigned long>(f.size())))) {
    PrimaryPart fp = primary_part_embedded(f, p), gp = primary_part_embedded(g, p);
    if (sorted_orders(fp.form) != sorted_orders(gp.form)) {
      res.decided = true;
      return res;
    }
    std::uint64_t nodes = 0;
    std::vector<Elem> img;
    SearchOutcome out = search_isometry(fp.form, gp.form, budget, nodes, img);
    if (out == SearchOutcome::Exhausted) {
      res.decided = true;
      return res;
    }
    if (out == SearchOutcome::Budget) {
      res.method += " (budget exhausted)";
      return res;
    }
    // Generator i of f is sum over primes of alpha_p times its p-component.
    for (std::size_t k = 0; k < fp.form.ngens(); ++k) {
      const std::size_t i = fp.parent_index[k];
      const long pk = fp.form.orders()[k];
      const long cofactor = f.orders()[i] / pk;
      const long alpha = inverse_mod(cofactor % pk, pk);
      Elem image_in_g = g.zero();
      for (std::size_t t = 0; t < gp.form.ngens(); ++t)
        if (img[k][t])
          image_in_g = g.add(image_in_g, g.scale(img[k][t], gp.gens_in_parent[t]));
      total[i] = g.add(total[i], g.scale(alpha, image_in_g));
    }
  }
  res.decided = res.isomorphic = true;
  res.witness = total;
  return res;
}

// ---------------------------------------------------------------------------
// Automorphisms and orbits

Elem apply_automorphism(const FiniteQuadraticForm& f, const FormAutomorphism& a, const Elem& x) {
  Elem r = f.zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) r = f.add(r, f.scale(x[i], a[i]));
  return r;
}

bool is_isometry(const Lattice& l, const Matrix& m) {
  if (m.rows() != l.rank() || m.cols() != l.rank() || !m.is_integral()) return false;
  if (m * l.gram() * m.transpose() != l.gram()) return false;
  return abs(det(m)) == 1;
}

FormAutomorphism induced_automorphism(const DiscriminantGroup& dg, const Matrix& m) {
  if (!is_isometry(dg.lattice, m))
    throw DiscFormError("induced_automorphism: matrix is not an isometry of " + dg.lattice.name());
  FormAutomorphism a;
  for (const auto& g : dg.gens) a.push_back(dg.class_of(vec_mul(g, m)));
  return a;
}

namespace {

void check_automorphism(const FiniteQuadraticForm& f, const FormAutomorphism& a) {
  if (a.size() != f.ngens()) throw DiscFormError("automorphism: wrong number of generator images");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.orders()[i] % f.order_of(a[i]) != 0)
      throw DiscFormError("automorphism: image order does not divide generator order");
    if (f.q(a[i]) != f.qgens()[i]) throw DiscFormError("automorphism does not preserve q");
    for (std::size_t j = 0; j < i; ++j)
      if (f.b(a[i], a[j]) != f.bmat()(i, j)) throw DiscFormError("automorphism does not preserve b");
  }
}

std::vector<OrbitPart> sort_parts(std::vector<OrbitPart> parts) {
  for (auto& p : parts) std::sort(p.elements.begin(), p.elements.end());
  std::sort(parts.begin(), parts.end(), [](const OrbitPart& a, const OrbitPart& b) {
    if (a.q != b.q) return a.q < b.q;
    return a.elements.front() < b.elements.front();
  });
  return parts;
}

}  // namespace

std::vector<OrbitPart> orbit_partition(const FiniteQuadraticForm& f,
                                       const std::vector<FormAutomorphism>& gens) {
  for (const auto& a : gens) check_automorphism(f, a);
  const std::uint64_t n = f.size();
  std::vector<char> seen(n, 0);
  std::vector<OrbitPart> parts;
  for (std::uint64_t start = 1; start < n; ++start) {
    if (seen[start]) continue;
    OrbitPart part;
    part.q = f.q(f.element(start));
    std::vector<std::uint64_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      std::uint64_t cur = stack.back();
      stack.pop_back();
      part.elements.push_back(cur);
      Elem x = f.element(cur);
      for (const auto& a : gens) {
        std::uint64_t nxt = f.index_of(apply_automorphism(f, a, x));
        if (!seen[nxt]) {
          seen[nxt] = 1;
          stack.push_back(nxt);
        }
      }
    }
    parts.push_back(std::move(part));
  }
  return sort_parts(std::move(parts));
}

std::vector<OrbitPart> level_sets(const FiniteQuadraticForm& f) {
  std::map<Q, OrbitPart> by_q;
  for (std::uint64_t k = 1; k < f.size(); ++k) {
    Q v = f.q(f.element(k));
    auto& part = by_q[v];
    part.q = v;
    part.elements.push_back(k);
  }
  std::vector<OrbitPart> parts;
  for (auto& [q, p] : by_q) parts.push_back(std::move(p));
  return sort_parts(std::move(parts));
}

}  // namespace k3lat
