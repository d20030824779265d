#include "k3lat/families.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "parallel.hpp"

namespace k3lat {

namespace {

constexpr std::size_t kFrameRank = 13;

// Y frame index of M_which^(j).
std::size_t ym(int which, int j) { return 1 + 2 * static_cast<std::size_t>(j - 1) + static_cast<std::size_t>(which - 1); }

Vec frame_unit(std::size_t idx) {
  Vec v(kFrameRank);
  v[idx] = 1;
  return v;
}

// a M1 + b M2 in the listed Y-frame blocks.
Vec yblocks(std::initializer_list<int> blocks, long a, long b) {
  Vec v(kFrameRank);
  for (int j : blocks) {
    v[ym(1, j)] += a;
    v[ym(2, j)] += b;
  }
  return v;
}

Vec xk(std::initializer_list<int> ks) {
  Vec v(kFrameRank);
  for (int i : ks) v[static_cast<std::size_t>(i)] += 1;
  return v;
}

Vec with_head(const Q& h, const Vec& rest) {
  Vec v{h};
  v.insert(v.end(), rest.begin(), rest.end());
  return v;
}

std::vector<Vec> k12_frame_gens() {
  std::vector<Vec> g;
  for (std::size_t i = 1; i <= 12; ++i) g.push_back(frame_unit(i));
  g.push_back(with_head(0, k12::z()));
  return g;
}

std::vector<Vec> mz3_frame_gens() {
  std::vector<Vec> g;
  for (std::size_t i = 1; i <= 12; ++i) g.push_back(frame_unit(i));
  g.push_back(with_head(0, mz3::mhat()));
  return g;
}

std::vector<Vec> lam_k12_gens() {
  std::vector<Vec> g;
  for (int i = 1; i <= 12; ++i) g.push_back(lam::k(i));
  g.push_back(lam::z());
  return g;
}

std::vector<Vec> h2y_m_gens() {
  std::vector<Vec> g;
  for (int j = 1; j <= 6; ++j) {
    g.push_back(h2y::unit(h2y::m(1, j)));
    g.push_back(h2y::unit(h2y::m(2, j)));
  }
  g.push_back(h2y::mhat());
  return g;
}

const RelativeLattice& glued_lambda() {
  static const RelativeLattice l = build("LambdaK3_glued").lattice;
  return l;
}

const RelativeLattice& h2y_lattice() {
  static const RelativeLattice l = build_H2Y();
  return l;
}

long mod(long a, long m) { return ((a % m) + m) % m; }

// Sign so that the first nonzero coordinate is positive.
Vec normalized(Vec v) {
  for (const auto& c : v)
    if (sgn(c)) {
      if (sgn(c) < 0) v = -v;
      break;
    }
  return v;
}

// E6 vector e1+e3+e5, e1+e3 or e1 by the number of terms.
std::vector<int> e6_terms(int n) {
  if (n == 3) return {1, 3, 5};
  if (n == 2) return {1, 3};
  return {1};
}

std::string e6_label(int n) {
  if (n == 3) return "e1+e3+e5";
  if (n == 2) return "e1+e3";
  return "e1";
}

bool parts_equal(const std::vector<OrbitPart>& a, const std::vector<OrbitPart>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].q != b[i].q || a[i].elements != b[i].elements) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptors

std::string side_str(Side s) { return s == Side::X ? "X" : "Y"; }
std::string variant_str(Variant v) { return v == Variant::Plain ? "Plain" : "Primed"; }

Variant parse_variant(const std::string& s) {
  if (s == "plain" || s == "Plain") return Variant::Plain;
  if (s == "primed" || s == "Primed" || s == "prime") return Variant::Primed;
  throw FamilyError("unknown variant '" + s + "' (expected plain or primed)");
}

Side parse_side(const std::string& s) {
  if (s == "X" || s == "x") return Side::X;
  if (s == "Y" || s == "y") return Side::Y;
  throw FamilyError("unknown side '" + s + "' (expected X or Y)");
}

std::string NSDescriptor::str() const {
  return variant_str(variant) + side_str(side) + "(" + std::to_string(degree) + ")";
}

nlohmann::json NSDescriptor::to_json() const {
  return {{"side", side_str(side)}, {"variant", variant_str(variant)}, {"degree", degree},
          {"label", str()}};
}

void validate(const NSDescriptor& d) {
  if (d.degree < 1) throw FamilyError(d.str() + ": degree must be positive");
  if (d.variant == Variant::Primed && d.degree % 3 != 0)
    throw FamilyError(d.str() + ": no even overlattice exists unless the degree is divisible by 3");
}

// ---------------------------------------------------------------------------
// Frames

Lattice x_frame(long d) {
  Lattice l = direct_sum({lattice_2d(d), build("K12tilde").lattice.reference()},
                         "<" + std::to_string(2 * d) + ">+K12tilde");
  return l;
}

Lattice y_frame(long e) {
  std::vector<Lattice> parts{lattice_2d(e)};
  for (int j = 0; j < 6; ++j) parts.push_back(root_lattice_A(2));
  std::vector<std::string> labels{"H"};
  for (int j = 1; j <= 6; ++j) {
    labels.push_back("M1^(" + std::to_string(j) + ")");
    labels.push_back("M2^(" + std::to_string(j) + ")");
  }
  Lattice l = direct_sum(parts, "<" + std::to_string(2 * e) + ">+A2^6");
  return Lattice(l.name(), l.gram(), labels);
}

RelativeLattice plain_x_lattice(long d) {
  return overlattice(x_frame(d), {{with_head(0, k12::z()), "z"}},
                     "<" + std::to_string(2 * d) + ">+K12");
}

RelativeLattice plain_y_lattice(long e) {
  return overlattice(y_frame(e), {{with_head(0, mz3::mhat()), "Mhat"}},
                     "<" + std::to_string(2 * e) + ">+M_Z3");
}

Vec y_frame_zj(int j) { return with_head(0, mz3::zj(j)); }

// ---------------------------------------------------------------------------
// Overlattices

namespace {

bool summands_primitive(const RelativeLattice& over, const std::vector<Vec>& lattice_part) {
  const Lattice& ref = over.reference();
  RelativeLattice pol(ref, {frame_unit(0)});
  RelativeLattice part(ref, lattice_part);
  return saturate_in(over, pol.basis()).same_lattice(pol) &&
         saturate_in(over, part.basis()).same_lattice(part);
}

std::optional<OverlatticeClass> finish_class(Side side, long degree, const Vec& g, std::string label,
                                             const RelativeLattice& plain) {
  OverlatticeClass c;
  c.side = side;
  c.degree = degree;
  c.g = g;
  c.g_label = std::move(label);
  Vec g3 = Q(1, 3) * g;
  c.q_g3 = mod2(plain.reference().norm(g3));
  Vec glue = g3;
  glue[0] = Q(1, 3);
  std::string name = "(" + plain.name() + ")'";
  c.lattice = overlattice(plain, {{glue, "(" + std::string(side == Side::X ? "L" : "H") + "+g)/3"}}, name);
  c.summands_primitive =
      summands_primitive(c.lattice, side == Side::X ? k12_frame_gens() : mz3_frame_gens());
  return c;
}

}  // namespace

std::optional<OverlatticeClass> classify_overlattice_X(long d) {
  if (d < 1) throw FamilyError("degree must be positive");
  if (d % 3 != 0) return std::nullopt;
  switch (mod(d, 9)) {
    case 0: return finish_class(Side::X, d, xk({1, 3, 5, 7, 9, 11}), "k1+k3+k5+k7+k9+k11", plain_x_lattice(d));
    case 3: return finish_class(Side::X, d, xk({1, 3, 7, 9}), "k1+k3+k7+k9", plain_x_lattice(d));
    default: return finish_class(Side::X, d, xk({1, 7}), "k1+k7", plain_x_lattice(d));
  }
}

std::optional<OverlatticeClass> classify_overlattice_Y(long e) {
  if (e < 1) throw FamilyError("degree must be positive");
  if (e % 3 != 0) return std::nullopt;
  switch (mod(e, 9)) {
    case 0:
      return finish_class(Side::Y, e, yblocks({1, 2, 3}, 1, 2), "sum_{j=1..3}(M1+2M2)", plain_y_lattice(e));
    case 3:
      return finish_class(Side::Y, e, yblocks({1, 2}, 2, 1) + yblocks({3, 4}, 1, 2),
                          "sum_{j=1,2}(2M1+M2)+sum_{j=3,4}(M1+2M2)", plain_y_lattice(e));
    default:
      return finish_class(Side::Y, e, yblocks({1}, 1, 2) + yblocks({2}, 2, 1),
                          "(M1+2M2)^(1)+(2M1+M2)^(2)", plain_y_lattice(e));
  }
}

std::optional<OverlatticeClass> classify_overlattice(Side side, long degree) {
  return side == Side::X ? classify_overlattice_X(degree) : classify_overlattice_Y(degree);
}

AdmissibleGlueReport enumerate_admissible_glues(Side side, long degree, bool compare) {
  if (degree < 1) throw FamilyError("degree must be positive");
  AdmissibleGlueReport rep;
  rep.side = side;
  rep.degree = degree;
  NamedLattice part = build(side == Side::X ? "K12" : "M_Z3");
  DiscriminantGroup dg = discriminant_group(part.gram_lattice());
  Matrix basis = part.lattice.basis_matrix();
  RelativeLattice plain = side == Side::X ? plain_x_lattice(degree) : plain_y_lattice(degree);
  rep.candidates = static_cast<std::size_t>(dg.form.size() - 1);

  Q pol_term = Q(2 * degree, 9);
  std::vector<std::uint64_t> keep;
  if (degree % 3 == 0)
    for (std::uint64_t i = 1; i < dg.form.size(); ++i)
      if (mod2(pol_term + dg.form.q(dg.form.element(i))) == 0) keep.push_back(i);

  rep.survivors.resize(keep.size());
  std::optional<Lattice> target;
  FiniteQuadraticForm target_form;
  bool same_signature = false;
  if (compare && !keep.empty()) {
    target = classify_overlattice(side, degree)->lattice.as_lattice();
    target_form = discriminant_form(*target);
    // Every candidate spans the rational space of the plain lattice.
    same_signature = target->signature() == plain.as_lattice().signature();
  }
  detail::parallel_for(keep.size(), [&](std::size_t n) {
    Elem x = dg.form.element(keep[n]);
    AdmissibleGlue g;
    g.g3 = with_head(0, vec_mul(dg.lift(x), basis));
    g.q_g3 = dg.form.q(x);
    if (target) {
      Vec glue = g.g3;
      glue[0] = Q(1, 3);
      RelativeLattice over = overlattice(plain, {{glue, "f"}});
      // Index-3 extension generated by f: the summands stay primitive unless the
      // polarization part or the lattice part of f is already in the extension.
      Vec pol_part = frame_unit(0);
      pol_part[0] = Q(1, 3);
      bool primitive = !over.contains(pol_part) && !over.contains(g.g3);
      if (primitive) {
        Lattice l = over.as_lattice();
        g.genus_matches = same_signature && l.rank() == target->rank() && abs(l.det()) == abs(target->det()) &&
                          fqf_isomorphic(discriminant_form(l), target_form).isomorphic;
      }
    }
    rep.survivors[n] = std::move(g);
  });
  std::set<Q> qs;
  for (const auto& g : rep.survivors) {
    qs.insert(g.q_g3);
    if (!g.genus_matches) rep.all_genus_match = false;
  }
  if (!compare) rep.all_genus_match = false;
  rep.q_values.assign(qs.begin(), qs.end());
  return rep;
}

// ---------------------------------------------------------------------------
// Embeddings

EmbeddedNS embed_NSX(long d, Variant v) {
  EmbeddedNS e;
  e.desc = {Side::X, v, d};
  validate(e.desc);
  if (v == Variant::Plain) {
    e.k = d;
    e.polarization = lam::unit(lam::u1) + Q(d) * lam::unit(lam::u2);
  } else {
    int terms = mod(d, 9) == 0 ? 3 : mod(d, 9) == 3 ? 2 : 1;
    Q g2 = Q(-2 * terms);
    Q k = (Q(2 * d) - 3 * g2) / 18;
    if (k.get_den() != 1) throw FamilyError("no integral k for " + e.desc.str());
    e.k = k.get_num().get_si();
    e.g_label = e6_label(terms);
    e.polarization = Q(3) * lam::unit(lam::u1) + Q(3 * e.k) * lam::unit(lam::u2);
    for (int b = 1; b <= 3; ++b)
      for (int i : e6_terms(terms)) e.polarization[lam::e(b, i)] += 1;
  }
  if (glued_lambda().reference().norm(e.polarization) != 2 * d)
    throw FamilyError("polarization of " + e.desc.str() + " has the wrong square");
  std::vector<Vec> gens{e.polarization};
  for (const auto& g : lam_k12_gens()) gens.push_back(g);
  e.generated = RelativeLattice(lam::base(), gens, e.desc.str());
  e.closure = saturate_in(glued_lambda(), gens, "NS(" + e.desc.str() + ")");
  e.index = e.closure.index_of(e.generated);
  return e;
}

EmbeddedNS embed_NSY(long deg, Variant v) {
  EmbeddedNS e;
  e.desc = {Side::Y, v, deg};
  validate(e.desc);
  Vec h(h2y::rank);
  h[h2y::u1] = 1;
  if (v == Variant::Primed) {
    e.k = deg / 3;
    h[h2y::u2] = e.k;
  } else {
    int terms = mod(deg, 3) == 0 ? 3 : mod(deg, 3) == 1 ? 2 : 1;
    e.k = (2 * deg + 2 * terms) / 6;
    e.g_label = e6_label(terms);
    h[h2y::u2] = e.k;
    for (int i : e6_terms(terms)) h[h2y::e(i)] += 1;
  }
  e.polarization = h;
  if (h2y::base().norm(h) != 2 * deg)
    throw FamilyError("polarization of " + e.desc.str() + " has the wrong square");
  std::vector<Vec> gens{h};
  for (const auto& g : h2y_m_gens()) gens.push_back(g);
  e.generated = RelativeLattice(h2y::base(), gens, e.desc.str());
  e.closure = saturate_in(h2y_lattice(), gens, "NS(" + e.desc.str() + ")");
  e.index = e.closure.index_of(e.generated);
  return e;
}

// ---------------------------------------------------------------------------
// Quotient correspondence

NSDescriptor expected_quotient(const NSDescriptor& x) {
  validate(x);
  if (x.side != Side::X) throw FamilyError("expected an X-side descriptor, got " + x.str());
  if (x.variant == Variant::Plain) return {Side::Y, Variant::Primed, 3 * x.degree};
  return {Side::Y, Variant::Plain, x.degree / 3};
}

NSDescriptor expected_cover(const NSDescriptor& y) {
  validate(y);
  if (y.side != Side::Y) throw FamilyError("expected a Y-side descriptor, got " + y.str());
  if (y.variant == Variant::Plain) return {Side::X, Variant::Primed, 3 * y.degree};
  return {Side::X, Variant::Plain, y.degree / 3};
}

Lattice shape_lattice(const NSDescriptor& d) {
  validate(d);
  if (d.variant == Variant::Primed) return classify_overlattice(d.side, d.degree)->lattice.as_lattice();
  return (d.side == Side::X ? plain_x_lattice(d.degree) : plain_y_lattice(d.degree)).as_lattice();
}

namespace {

// Reads off the polarization, degree and variant of a rank-13 NS lattice given the
// generators of its K12 / M_Z3 part.
QuotientResult identify(const RelativeLattice& ns, const std::vector<Vec>& part, Side side) {
  QuotientResult r;
  r.ns = ns;
  RelativeLattice comp = orthogonal_complement(ns, part);
  if (comp.rank() != 1) throw FamilyError("complement of the lattice part has rank " + std::to_string(comp.rank()));
  r.polarization = normalized(comp.basis()[0]);
  r.polarization_square = ns.reference().norm(r.polarization);
  Q half = r.polarization_square / 2;
  if (sgn(half) <= 0 || half.get_den() != 1) throw FamilyError("polarization square is not positive and even");
  std::vector<Vec> gens{r.polarization};
  gens.insert(gens.end(), part.begin(), part.end());
  Z idx = ns.index_of(RelativeLattice(ns.reference(), gens));
  if (idx != 1 && idx != 3) throw FamilyError("unexpected glue index " + idx.get_str());
  r.target = {side, idx == 1 ? Variant::Plain : Variant::Primed, half.get_num().get_si()};
  GenusComparison g = compare_genus(ns.as_lattice(), shape_lattice(r.target));
  r.genus_matches = g.same;
  r.genus_detail = g.detail;
  return r;
}

}  // namespace

QuotientResult ns_of_quotient(const NSDescriptor& x) {
  NSDescriptor expected = expected_quotient(x);
  EmbeddedNS e = embed_NSX(x.degree, x.variant);
  LatticeMap p = push_forward();
  std::vector<Vec> gens;
  for (const auto& b : e.closure.basis()) {
    Vec v = p.apply(b);
    if (!is_zero(v)) gens.push_back(v);
  }
  auto m = h2y_m_gens();
  gens.insert(gens.end(), m.begin(), m.end());
  RelativeLattice ns = saturate_in(h2y_lattice(), gens, "NS(Y)");
  QuotientResult r = identify(ns, m, Side::Y);
  r.source = x;
  r.expected = expected;
  return r;
}

QuotientResult ns_of_quotient_inverse(const NSDescriptor& y) {
  NSDescriptor expected = expected_cover(y);
  EmbeddedNS e = embed_NSY(y.degree, y.variant);
  LatticeMap b = pull_back();
  std::vector<Vec> gens;
  for (const auto& v : e.closure.basis()) {
    Vec w = b.apply(v);
    if (!is_zero(w)) gens.push_back(w);
  }
  auto k = lam_k12_gens();
  gens.insert(gens.end(), k.begin(), k.end());
  RelativeLattice ns = saturate_in(glued_lambda(), gens, "NS(X)");
  QuotientResult r = identify(ns, k, Side::X);
  r.source = y;
  r.expected = expected;
  return r;
}

// ---------------------------------------------------------------------------
// Divisors

Q chi(const Q& square) { return Q(2) + square / 2; }

std::string divisor_str(const Vec& c) {
  static const std::array<std::string, 2> names{"M1", "M2"};
  std::string s;
  auto term = [&](const Q& q, const std::string& name) {
    if (!sgn(q)) return;
    bool neg = sgn(q) < 0;
    Q a = neg ? Q(-q) : q;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (a != 1) s += rational_str(a) + "*";
    s += name;
  };
  term(c[0], "H");
  for (int j = 1; j <= 6; ++j)
    for (int w = 1; w <= 2; ++w) term(c[ym(w, j)], names[static_cast<std::size_t>(w - 1)] + "^(" + std::to_string(j) + ")");
  return s.empty() ? "0" : s;
}

bool DivisorTriple::all_integral() const {
  return std::all_of(divisors.begin(), divisors.end(), [](const DivisorReport& d) { return d.integral; });
}

namespace {

std::vector<Vec> divisor_coords(const NSDescriptor& y) {
  Vec h = frame_unit(0);
  Q third(1, 3);
  if (y.variant == Variant::Plain)
    return {h, h - third * yblocks({1, 2, 3, 4, 5, 6}, 2, 1), h - third * yblocks({1, 2, 3, 4, 5, 6}, 1, 2)};
  switch (mod(y.degree, 9)) {
    case 0:
      return {third * (h - yblocks({1, 2, 3}, 1, 2)), third * (h - yblocks({4, 5, 6}, 2, 1)),
              third * (h - yblocks({1, 2, 3}, 2, 1) - yblocks({4, 5, 6}, 1, 2))};
    case 3:
      return {third * (h - yblocks({1, 2}, 2, 1) - yblocks({3, 4}, 1, 2)),
              third * (h - yblocks({1, 2, 5, 6}, 1, 2)),
              third * (h - yblocks({3, 4}, 2, 1) - yblocks({5, 6}, 1, 2))};
    default:
      return {third * (h - yblocks({1}, 1, 2) - yblocks({2}, 2, 1)),
              third * (h - yblocks({2}, 1, 2) - yblocks({3, 4, 5, 6}, 2, 1)),
              third * (h - yblocks({1}, 2, 1) - yblocks({3, 4, 5, 6}, 1, 2))};
  }
}

// Residue of the j-th block of a dual vector in A2*/A2 = Z/3, with (M1+2M2)/3 -> 1.
std::optional<long> block_residue(const Vec& v, int j) {
  Q a = 3 * v[ym(1, j)], b = 3 * v[ym(2, j)];
  if (a.get_den() != 1 || b.get_den() != 1) return std::nullopt;
  long ai = mod(a.get_num().get_si(), 3), bi = mod(b.get_num().get_si(), 3);
  if (bi != mod(2 * ai, 3)) return std::nullopt;
  return ai;
}

// Representative with the same polarization coefficient whose block residues differ from
// those of v in as few blocks as possible.
std::optional<Vec> nearest_class(const Vec& v, const RelativeLattice& lat) {
  std::array<long, 7> r{};
  for (int j = 1; j <= 6; ++j) {
    auto x = block_residue(v, j);
    if (!x) return std::nullopt;
    r[static_cast<std::size_t>(j)] = *x;
  }
  std::optional<Vec> best;
  int best_changes = 7;
  for (int t = 0; t < 729; ++t) {
    Vec c(kFrameRank);
    c[0] = v[0];
    int changes = 0;
    for (int j = 1, rest = t; j <= 6; ++j, rest /= 3) {
      long tj = rest % 3;
      if (tj) ++changes;
      long res = (r[static_cast<std::size_t>(j)] + tj) % 3;
      if (res == 2) c = c - Q(1, 3) * yblocks({j}, 1, 2);
      if (res == 1) c = c - Q(1, 3) * yblocks({j}, 2, 1);
    }
    if (changes < best_changes && lat.contains(c)) {
      best = c;
      best_changes = changes;
    }
  }
  return best;
}

}  // namespace

DivisorTriple divisors_Di(const NSDescriptor& y) {
  validate(y);
  if (y.side != Side::Y) throw FamilyError("divisors are defined on the Y side, got " + y.str());
  DivisorTriple t;
  t.desc = y;
  Lattice frame = y_frame(y.degree);
  auto coords = divisor_coords(y);
  std::optional<RelativeLattice> literal, swapped;
  const RelativeLattice* chosen = nullptr;
  RelativeLattice plain;
  if (y.variant == Variant::Primed) {
    auto cls = classify_overlattice_Y(y.degree);
    literal = cls->lattice;
    Vec glue = Q(-1, 3) * cls->g;
    glue[0] = Q(1, 3);
    swapped = overlattice(plain_y_lattice(y.degree), {{glue, "(H-g)/3"}});
    if (literal->contains(coords[0]) || !swapped->contains(coords[0])) {
      chosen = &*literal;
      t.orientation = "literal";
    } else {
      chosen = &*swapped;
      t.orientation = "swapped";
    }
  } else {
    plain = plain_y_lattice(y.degree);
    chosen = &plain;
    t.orientation = "n/a";
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    DivisorReport d;
    d.label = "D" + std::to_string(i + 1);
    d.coords = coords[i];
    d.square = frame.norm(coords[i]);
    d.chi = chi(d.square);
    d.integral_literal = literal ? literal->contains(coords[i]) : plain.contains(coords[i]);
    d.integral_swapped = swapped ? swapped->contains(coords[i]) : d.integral_literal;
    d.integral = chosen->contains(coords[i]);
    if (!d.integral) d.nearest = nearest_class(coords[i], *chosen);
    t.divisors.push_back(std::move(d));
  }
  return t;
}

std::vector<Q> expected_chi(const NSDescriptor& x) {
  validate(x);
  if (x.side != Side::X) throw FamilyError("expected an X-side descriptor, got " + x.str());
  Q t(x.degree, 3);
  t.canonicalize();
  if (x.variant == Variant::Primed) return {t + 2, t, t};
  switch (mod(3 * x.degree, 9)) {
    case 0: return {t + 1, t + 1, t};
    case 3: return {t + Q(2, 3), t + Q(2, 3), t + Q(2, 3)};
    default: return {t + Q(4, 3), t + Q(1, 3), t + Q(1, 3)};
  }
}

EigenspaceResult eigenspace_dimensions(long d, Variant v) {
  EigenspaceResult r;
  r.x = {Side::X, v, d};
  r.y = ns_of_quotient(r.x).target;
  DivisorTriple t = divisors_Di(r.y);
  r.sum = 0;
  for (const auto& dv : t.divisors) {
    r.dims.push_back(dv.chi);
    r.sum += dv.chi;
  }
  r.sum_ok = r.sum == d + 2;
  r.table_ok = r.dims == expected_chi(r.x);
  return r;
}

std::vector<PullbackReport> pullback_Di(const NSDescriptor& y) {
  validate(y);
  if (y.side != Side::Y) throw FamilyError("pull-backs start on the Y side, got " + y.str());
  EmbeddedNS e = embed_NSY(y.degree, y.variant);
  LatticeMap b = pull_back();
  auto to_h2y = [&](const Vec& c) {
    Vec r = c[0] * e.polarization;
    for (int j = 1; j <= 6; ++j)
      for (int w = 1; w <= 2; ++w) r[h2y::m(w, j)] += c[ym(w, j)];
    return r;
  };
  Vec target, pol_target;
  std::string pol_name;
  if (y.variant == Variant::Plain) {
    target = embed_NSX(3 * y.degree, Variant::Primed).polarization;
    pol_target = target;
    pol_name = "pi^*(h(H)) = j~(L)";
  } else {
    target = embed_NSX(y.degree / 3, Variant::Plain).polarization;
    pol_target = Q(3) * target;
    pol_name = "pi^*(h~(H)) = 3 j(L)";
  }
  std::vector<PullbackReport> out;
  auto add = [&](std::string label, const Vec& src, const Vec& expected) {
    PullbackReport p{y, std::move(label), b.apply(src), expected, false};
    p.equal = p.pulled == p.expected;
    out.push_back(std::move(p));
  };
  add(pol_name, e.polarization, pol_target);
  for (const auto& d : divisors_Di(y).divisors) add("pi^*(" + d.label + ")", to_h2y(d.coords), target);
  return out;
}

// ---------------------------------------------------------------------------
// Tower

std::vector<TowerRung> isogeny_tower(long d, int height) {
  if (d < 1 || height < 1) throw FamilyError("tower needs d >= 1 and height >= 1");
  std::vector<TowerRung> out;
  long m = d;
  for (int k = 0; k < height; ++k, m *= 3) {
    TowerRung r;
    r.k = k;
    r.m = m;
    r.degree2 = 6 * m;
    r.as_x = {Side::X, Variant::Primed, 3 * m};
    r.as_y = {Side::Y, Variant::Plain, 3 * m};
    GenusComparison g = compare_genus(classify_overlattice_X(3 * m)->lattice.as_lattice(),
                                      plain_y_lattice(3 * m).as_lattice());
    r.genus_equal = g.same;
    r.genus_detail = g.detail;
    if (k + 1 < height) {
      QuotientResult up = ns_of_quotient_inverse(r.as_y);
      r.step_ok = up.matches() && up.target == NSDescriptor{Side::X, Variant::Primed, 9 * m};
    }
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbits

Matrix k12_sigma() {
  Matrix s(12, 12);
  for (std::size_t i = 0; i < 6; ++i) {
    s(i, i + 6) = 1;
    s(i, i) = -1;
    s(i + 6, i) = -1;
  }
  return s;
}

Matrix k12_phi() {
  Matrix s(12, 12);
  for (std::size_t i = 0; i < 6; ++i) {
    s(i, i + 6) = 1;
    s(i + 6, i) = 1;
  }
  return s;
}

Matrix mz3_block_swap(int j) {
  if (j < 1 || j > 5) throw FamilyError("block transposition index must be 1..5");
  Matrix s(12, 12);
  for (int b = 1; b <= 6; ++b) {
    int to = b == j ? j + 1 : b == j + 1 ? j : b;
    for (int w = 1; w <= 2; ++w) s(mz3::m(w, b), mz3::m(w, to)) = 1;
  }
  return s;
}

Matrix mz3_orientation_swap() {
  Matrix s(12, 12);
  for (int b = 1; b <= 6; ++b) {
    s(mz3::m(1, b), mz3::m(2, b)) = 1;
    s(mz3::m(2, b), mz3::m(1, b)) = 1;
  }
  return s;
}

namespace {

OrbitCheck orbit_check(const std::string& name, const std::vector<Matrix>& builtin, const OrbitOptions& opt) {
  NamedLattice nl = build(name);
  Lattice l = nl.gram_lattice();
  Matrix b = nl.lattice.basis_matrix();
  Matrix binv = inverse(b);
  DiscriminantGroup dg = discriminant_group(l);
  OrbitCheck c;
  c.lattice = name;
  c.group_order = dg.form.size();
  std::vector<FormAutomorphism> autos;
  auto add_frame = [&](const Matrix& t) {
    Matrix m = b * t * binv;
    if (!m.is_integral() || !is_isometry(l, m))
      throw FamilyError("generator is not an isometry of " + name);
    autos.push_back(induced_automorphism(dg, m));
  };
  autos.push_back(induced_automorphism(dg, Matrix::identity(l.rank()).scaled(-1)));
  if (opt.use_builtin)
    for (const auto& t : builtin) add_frame(t);
  for (const auto& t : opt.extra_generators) add_frame(t);
  if (opt.use_search && opt.first_image_limit > 0) {
    IsometrySearchConfig cfg;
    cfg.first_image_limit = opt.first_image_limit;
    cfg.max_isometries = opt.first_image_limit + 8;
    cfg.max_nodes = opt.max_nodes;
    IsometrySearchResult res = isometry_search(l, cfg);
    c.searched = res.isometries.size();
    for (const auto& m : res.isometries) autos.push_back(induced_automorphism(dg, m));
  }
  c.generators = autos.size();
  c.orbits = orbit_partition(dg.form, autos);
  c.levels = level_sets(dg.form);
  c.equal = parts_equal(c.orbits, c.levels);
  return c;
}

}  // namespace

OrbitCheck orbit_check_K12(const OrbitOptions& opt) {
  return orbit_check("K12", {k12_sigma(), k12_phi()}, opt);
}

OrbitCheck orbit_check_M(const OrbitOptions& opt) {
  std::vector<Matrix> gens;
  for (int j = 1; j <= 5; ++j) gens.push_back(mz3_block_swap(j));
  gens.push_back(mz3_orientation_swap());
  return orbit_check("M_Z3", gens, opt);
}

}  // namespace k3lat
