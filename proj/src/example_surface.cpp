#include "k3lat/example_surface.hpp"

#include <array>
#include <sstream>

#include "k3lat/catalog.hpp"

namespace k3lat::surface {

std::size_t C(int i, int j) {
  if (i < 0 || i > 6 || j < 1 || j > 3) throw LatticeError("curve index out of range");
  return 3 + 7 * static_cast<std::size_t>(j - 1) + static_cast<std::size_t>(i);
}

std::vector<std::string> symbol_names() {
  std::vector<std::string> n{"O", "T1", "T2"};
  for (int j = 1; j <= 3; ++j)
    for (int i = 0; i <= 6; ++i) n.push_back("C" + std::to_string(i) + "^(" + std::to_string(j) + ")");
  return n;
}

Vec symbol(std::size_t idx) {
  Vec v(nsymbols);
  v[idx] = 1;
  return v;
}

Matrix build_symbol_gram() {
  Matrix g(nsymbols, nsymbols);
  for (std::size_t i = 0; i < nsymbols; ++i) g(i, i) = -2;
  auto link = [&](std::size_t a, std::size_t b) { g(a, b) = g(b, a) = 1; };
  const int edges[][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {5, 6}, {5, 2}};
  for (int j = 1; j <= 3; ++j) {
    for (auto [a, b] : edges) link(C(a, j), C(b, j));
    link(C(0, j), O);
    link(C(4, j), T1);
    link(C(6, j), T2);
  }
  return g;
}

SymbolGramReport symbol_gram_report() {
  Matrix g = build_symbol_gram();
  SymbolGramReport r;
  r.symmetric = g.is_symmetric();
  r.rank = k3lat::rank(g);
  r.kernel_dim = kernel_basis(g).size();
  r.squares_minus_two = true;
  for (std::size_t i = 0; i < nsymbols; ++i)
    if (g(i, i) != -2) r.squares_minus_two = false;
  return r;
}

namespace {

Vec combo(int j, const std::array<long, 7>& c) {
  Vec v(nsymbols);
  for (int i = 0; i <= 6; ++i) v[C(i, j)] += c[static_cast<std::size_t>(i)];
  return v;
}

Vec sum_fibers(const std::array<long, 7>& c) { return combo(1, c) + combo(2, c) + combo(3, c); }

Vec kernel_pairings(const Vec& v, const Matrix& g) { return vec_mul(v, g); }

std::string pairing_detail(const Vec& p) {
  auto names = symbol_names();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (sgn(p[i])) {
      os << (first ? "" : ", ") << "." << names[i] << " = " << rational_str(p[i]);
      first = false;
    }
  return os.str();
}

RelationCheck relation(std::string name, const Vec& v, const Matrix& g) {
  RelationCheck r;
  r.name = std::move(name);
  r.relation = Q(common_denominator(v)) * v;
  Vec p = kernel_pairings(r.relation, g);
  r.in_kernel = is_zero(p);
  if (!r.in_kernel) r.detail = "pairings" + pairing_detail(p);
  return r;
}

}  // namespace

Vec fiber(int j) { return combo(j, {1, 2, 3, 2, 1, 2, 1}); }

Vec T1_expression() {
  return Q(2) * fiber(1) + symbol(O) - Q(1, 3) * sum_fibers({0, 3, 6, 5, 4, 4, 2});
}

Vec T2_expression() {
  return Q(2) * fiber(1) + symbol(O) - Q(1, 3) * sum_fibers({0, 3, 6, 4, 2, 5, 4});
}

Vec G_class() {
  Vec v = combo(1, {2, 1, 0, 1, 2, 1, 2}) + combo(2, {1, 2, 0, 2, 1, 2, 1});
  return Q(1, 3) * v;
}

Vec G_integral() {
  return fiber(1) - combo(1, {0, 1, 2, 1, 0, 1, 0}) - symbol(C(2, 2));
}

Vec D_class() { return Q(3) * symbol(O) + sum_fibers({2, 1, 0, 0, 0, 0, 0}); }

Vec z_curves() {
  return Q(2) * fiber(1) - combo(1, {0, 2, 4, 3, 2, 3, 2}) - combo(2, {0, 0, 2, 2, 1, 2, 1});
}

std::vector<Vec> e6_block(int b) {
  // Chain C_a^(1) - C_b^(1) - centre - C_b^(2) - C_a^(2), with C_b^(3) on the centre.
  static const int outer[] = {1, 3, 5}, inner[] = {0, 4, 6};
  static const std::size_t centre[] = {O, T1, T2};
  if (b < 1 || b > 3) throw LatticeError("E6 block index out of range");
  std::size_t k = static_cast<std::size_t>(b - 1);
  return {symbol(C(outer[k], 1)), symbol(C(inner[k], 1)), symbol(centre[k]),
          symbol(C(inner[k], 2)), symbol(C(outer[k], 2)), symbol(C(inner[k], 3))};
}

std::vector<RelationCheck> verify_relations() {
  Matrix g = build_symbol_gram();
  std::vector<RelationCheck> out;
  out.push_back(relation("T1 = 2F + O - (1/3) sum_j (3C1 + 6C2 + 5C3 + 4C4 + 4C5 + 2C6)",
                         symbol(T1) - T1_expression(), g));
  out.push_back(relation("T2 = 2F + O - (1/3) sum_j (3C1 + 6C2 + 4C3 + 2C4 + 5C5 + 4C6)",
                         symbol(T2) - T2_expression(), g));
  out.push_back(relation("F^(1) = F^(2)", fiber(1) - fiber(2), g));
  out.push_back(relation("F^(1) = F^(3)", fiber(1) - fiber(3), g));
  out.push_back(relation("F^(2) = F^(3)", fiber(2) - fiber(3), g));
  out.push_back(relation("G = F - C1^(1) - 2C2^(1) - C3^(1) - C5^(1) - C2^(2)", G_class() - G_integral(), g));
  return out;
}

std::vector<std::size_t> sigma_permutation() {
  std::vector<std::size_t> p(nsymbols);
  p[O] = T1;
  p[T1] = T2;
  p[T2] = O;
  const int cyc[][3] = {{0, 4, 6}, {1, 3, 5}};
  for (int j = 1; j <= 3; ++j) {
    for (auto& c : cyc)
      for (int t = 0; t < 3; ++t) p[C(c[t], j)] = C(c[(t + 1) % 3], j);
    p[C(2, j)] = C(2, j);
  }
  return p;
}

Vec apply_sigma(const Vec& v) {
  auto p = sigma_permutation();
  Vec r(nsymbols);
  for (std::size_t i = 0; i < nsymbols; ++i) r[p[i]] += v[i];
  return r;
}

SigmaPermutationReport verify_sigma_permutation() {
  SigmaPermutationReport r;
  r.permutation = sigma_permutation();
  Matrix g = build_symbol_gram();
  r.order_three = true;
  for (std::size_t i = 0; i < nsymbols; ++i)
    if (r.permutation[r.permutation[r.permutation[i]]] != i) r.order_three = false;
  r.gram_preserved = true;
  for (std::size_t i = 0; i < nsymbols; ++i)
    for (std::size_t j = 0; j < nsymbols; ++j)
      if (g(r.permutation[i], r.permutation[j]) != g(i, j)) r.gram_preserved = false;
  r.blocks_cycled = true;
  for (int b = 1; b <= 3; ++b) {
    auto from = e6_block(b), to = e6_block(b % 3 + 1);
    for (std::size_t i = 0; i < 6; ++i)
      if (apply_sigma(from[i]) != to[i]) r.blocks_cycled = false;
  }
  Vec dg = apply_sigma(G_class()) - G_class();
  r.G_fixed = is_zero(vec_mul(dg, g));
  r.D_fixed = is_zero(vec_mul(apply_sigma(D_class()) - D_class(), g));
  return r;
}

bool NSReconstruction::ok() const {
  return u_ok && e6_blocks_ok && abs(det) == 3 && index == 3 && disc_opposite_A2 && G_is_x &&
         z_orthogonal_to_invariants && z_matches_frame;
}

NSReconstruction reconstruct_NS() {
  NSReconstruction r;
  Matrix g = build_symbol_gram();
  std::vector<Vec> basis;
  for (int b = 1; b <= 3; ++b)
    for (auto& v : e6_block(b)) basis.push_back(v);
  basis.push_back(symbol(C(2, 3)));
  basis.push_back(D_class());
  const std::size_t n = basis.size();
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = bilinear(basis[i], g, basis[j]);
  std::vector<std::string> labels;
  const char* names[] = {"O-block", "T1-block", "T2-block"};
  for (int b = 0; b < 3; ++b)
    for (int i = 1; i <= 6; ++i) labels.push_back(std::string(names[b]) + ".e" + std::to_string(i));
  labels.push_back("C2^(3)");
  labels.push_back("D");
  r.frame = Lattice("E6^3+U (curves)", gram, labels);

  r.u_gram = Matrix(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r.u_gram(i, j) = gram(18 + i, 18 + j);
  r.u_ok = r.u_gram == Matrix{{-2, 1}, {1, 0}};

  Matrix e6 = lattice_E6().gram();
  r.e6_blocks_ok = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < 18; ++j) {
      Q expect = 0;
      if (i < 18 && i / 6 == j / 6) expect = e6(i % 6, j % 6);
      if (gram(i, j) != expect) r.e6_blocks_ok = false;
    }

  Vec rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = bilinear(G_class(), g, basis[i]);
  r.G_coords = mat_vec(inverse(gram), rhs);
  Vec x(n);
  for (int b = 1; b <= 3; ++b) {
    std::size_t o = 6 * static_cast<std::size_t>(b - 1);
    x[o + 0] = Q(1, 3);
    x[o + 1] = Q(2, 3);
    x[o + 3] = Q(1, 3);
    x[o + 4] = Q(2, 3);
  }
  r.G_is_x = r.G_coords == x;
  r.ns = overlattice(r.frame, {{r.G_coords, "G"}}, "NS(S)");
  Lattice nsl = r.ns.as_lattice();
  r.det = nsl.det();
  r.index = r.ns.index_over_reference();
  r.disc_opposite_A2 = fqf_isomorphic(discriminant_form(nsl), discriminant_form(lattice_A2m()).negated()).isomorphic;

  std::vector<Vec> invariants{symbol(C(2, 3)), D_class(), G_class()};
  for (std::size_t i = 0; i < 6; ++i) invariants.push_back(e6_block(1)[i] + e6_block(2)[i] + e6_block(3)[i]);
  r.z_orthogonal_to_invariants = true;
  for (const auto& v : invariants)
    if (bilinear(z_curves(), g, v) != 0) r.z_orthogonal_to_invariants = false;

  Vec zl = lam::z(), zc(nsymbols);
  for (int b = 1; b <= 3; ++b) {
    auto blk = e6_block(b);
    for (int i = 1; i <= 6; ++i) zc = zc + zl[lam::e(b, i)] * blk[static_cast<std::size_t>(i - 1)];
  }
  r.z_matches_frame = is_zero(vec_mul(z_curves() - zc, g));
  return r;
}

}  // namespace k3lat::surface
