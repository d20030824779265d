#include "k3lat/catalog.hpp"

#include <algorithm>
#include <regex>

namespace k3lat {

namespace {

std::vector<std::string> numbered(const std::string& stem, int n, const std::string& suffix = "") {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i) + suffix);
  return out;
}

Lattice relabel(const Lattice& l, std::vector<std::string> labels) {
  return Lattice(l.name(), l.gram(), std::move(labels));
}

Vec unit_vec(std::size_t n, std::size_t idx) {
  Vec v(n);
  v[idx] = 1;
  return v;
}

}  // namespace

Lattice root_lattice_A(int n) {
  if (n < 1) throw CatalogError("A_n requires n >= 1");
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = -2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = 1;
  }
  return Lattice("A" + std::to_string(n), g, numbered("a", n));
}

Lattice lattice_E6() {
  Matrix g(6, 6);
  for (int i = 0; i < 6; ++i) g(i, i) = -2;
  const int edges[][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}};
  for (auto [a, b] : edges) g(a, b) = g(b, a) = 1;
  return Lattice("E6", g, numbered("e", 6));
}

Lattice lattice_E8() {
  Matrix g(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = -2;
  const int edges[][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}};
  for (auto [a, b] : edges) g(a, b) = g(b, a) = 1;
  return Lattice("E8", g, numbered("e", 8));
}

Lattice lattice_U() { return Lattice("U", Matrix{{0, 1}, {1, 0}}, {"u1", "u2"}); }

Lattice lattice_2d(long d) {
  if (d <= 0) throw CatalogError("<2d> requires d > 0");
  return Lattice("<" + std::to_string(2 * d) + ">", Matrix{{2 * d}}, {"L"});
}

Lattice lattice_A2m() { return Lattice("A2(-1)", Matrix{{2, -1}, {-1, 2}}, {"a1", "a2"}); }

Lattice scaled_dual(const Lattice& l, long n, std::string name) {
  if (l.degenerate()) throw CatalogError("scaled_dual of degenerate lattice " + l.name());
  Matrix g = inverse(l.gram()).scaled(n);
  if (!g.is_integral())
    throw CatalogError("scaled dual " + l.name() + "*(" + std::to_string(n) + ") is not integral");
  if (name.empty()) name = l.name() + "*(" + std::to_string(n) + ")";
  return Lattice(std::move(name), g);
}

// ---------------------------------------------------------------------------
// Frames

namespace lam {

std::size_t e(int block, int i) {
  if (block < 1 || block > 3 || i < 1 || i > 6) throw CatalogError("lam::e index out of range");
  return 4 + 6 * static_cast<std::size_t>(block - 1) + static_cast<std::size_t>(i - 1);
}

Lattice base() {
  Lattice l = direct_sum({lattice_A2m(), lattice_U(), lattice_E6(), lattice_E6(), lattice_E6()},
                         "A2(-1)+U+E6^3");
  std::vector<std::string> labels{"a1", "a2", "u1", "u2"};
  for (int b = 1; b <= 3; ++b)
    for (auto& s : numbered("e", 6, "^(" + std::to_string(b) + ")")) labels.push_back(s);
  return relabel(l, labels);
}

Vec unit(std::size_t idx) { return unit_vec(rank, idx); }

Vec v(int block) {
  Vec r(rank);
  r[e(block, 1)] = Q(1, 3);
  r[e(block, 2)] = Q(2, 3);
  r[e(block, 4)] = Q(1, 3);
  r[e(block, 5)] = Q(2, 3);
  return r;
}

Vec w() {
  Vec r(rank);
  r[a1] = Q(1, 3);
  r[a2] = Q(2, 3);
  return r;
}

Vec x() { return v(1) + v(2) + v(3); }
Vec y() { return w() + v(1) - v(2); }

Vec k(int i) {
  if (i < 1 || i > 12) throw CatalogError("lam::k index out of range");
  int base_i = i <= 6 ? i : i - 6;
  int other = i <= 6 ? 2 : 3;
  return unit(e(1, base_i)) - unit(e(other, base_i));
}

Vec z() { return Q(2) * v(1) - v(2) - v(3); }

}  // namespace lam

namespace k12 {

Vec z() {
  Vec r(12);
  for (int i : {1, 4, 7, 10}) r[i - 1] = Q(1, 3);
  for (int i : {2, 5, 8, 11}) r[i - 1] = Q(2, 3);
  return r;
}

Vec z_prime() {
  Vec r(12);
  for (int i : {1, 4, 7, 10}) r[i - 1] = Q(1, 3);
  for (int i : {2, 5, 8, 11}) r[i - 1] = Q(-1, 3);
  return r;
}

std::vector<Vec> match_basis() {
  std::vector<Vec> b;
  for (std::size_t i = 0; i < 10; ++i) b.push_back(unit_vec(12, i));
  b.push_back(z_prime());
  b.push_back(unit_vec(12, 11));
  return b;
}

}  // namespace k12

namespace h2y {

std::size_t e(int i) {
  if (i < 1 || i > 6) throw CatalogError("h2y::e index out of range");
  return 4 + static_cast<std::size_t>(i - 1);
}

std::size_t m(int which, int j) {
  if ((which != 1 && which != 2) || j < 1 || j > 6) throw CatalogError("h2y::m index out of range");
  return 10 + 2 * static_cast<std::size_t>(j - 1) + static_cast<std::size_t>(which - 1);
}

Lattice base() {
  std::vector<Lattice> parts{lattice_A2m(), rescale(lattice_U(), 3), lattice_E6()};
  for (int j = 0; j < 6; ++j) parts.push_back(root_lattice_A(2));
  Lattice l = direct_sum(parts, "A2(-1)+U(3)+E6+A2^6");
  std::vector<std::string> labels{"a1'", "a2'", "u1'", "u2'"};
  for (auto& s : numbered("e", 6, "'")) labels.push_back(s);
  for (int j = 1; j <= 6; ++j) {
    labels.push_back("M1^(" + std::to_string(j) + ")");
    labels.push_back("M2^(" + std::to_string(j) + ")");
  }
  return relabel(l, labels);
}

Vec unit(std::size_t idx) { return unit_vec(rank, idx); }

Vec zj(int j) {
  Vec r(rank);
  r[m(1, j)] = Q(1, 3);
  r[m(2, j)] = Q(2, 3);
  return r;
}

Vec mhat() {
  Vec r(rank);
  for (int j = 1; j <= 6; ++j) r = r + zj(j);
  return r;
}

Vec b(int i) {
  switch (i) {
    case 1: return zj(1) + zj(2) + zj(3);
    case 2: return zj(1) + zj(2) + zj(4);
    case 3: return zj(2) - zj(3) + zj(4) - zj(5);
    case 4: return -zj(1) + zj(3) - zj(4) + zj(5);
    default: throw CatalogError("h2y::b index out of range");
  }
}

Vec b2_glue() { return zj(1) + zj(2) + zj(5); }

Vec n(int i) {
  if (i != 4) return n_literal(i);
  Vec r(rank);
  r[u2] = Q(1, 3);
  return r + b2_glue();
}

Vec n_literal(int i) {
  Vec r(rank);
  switch (i) {
    case 1:
      r[a1] = Q(1, 3);
      r[a2] = Q(2, 3);
      return r + b(3);
    case 2:
      r[e(1)] = Q(1, 3);
      r[e(2)] = Q(2, 3);
      r[e(4)] = Q(1, 3);
      r[e(5)] = Q(2, 3);
      return r + b(4);
    case 3:
      r[u1] = Q(1, 3);
      return r + b(1);
    case 4:
      r[u2] = Q(1, 3);
      return r + b(2);
    default: throw CatalogError("h2y::n index out of range");
  }
}

}  // namespace h2y

namespace mz3 {

std::size_t m(int which, int j) { return h2y::m(which, j) - 10; }

Vec zj(int j) {
  Vec r(12);
  r[m(1, j)] = Q(1, 3);
  r[m(2, j)] = Q(2, 3);
  return r;
}

Vec mhat() {
  Vec r(12);
  for (int j = 1; j <= 6; ++j) r = r + zj(j);
  return r;
}

}  // namespace mz3

// ---------------------------------------------------------------------------
// Named lattices

namespace {

Lattice k12tilde() {
  Lattice e6 = lattice_E6();
  Matrix g(12, 12);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      g(i, j) = g(i + 6, j + 6) = 2 * e6.gram()(i, j);
      g(i, j + 6) = g(i + 6, j) = e6.gram()(i, j);
    }
  return Lattice("K12tilde", g, numbered("k", 12));
}

NamedLattice plain(const std::string& name, const Lattice& l) {
  return {name, RelativeLattice::whole(l.renamed(name)).renamed(name)};
}

Vec slice(const Vec& v, std::size_t from, std::size_t len) {
  return Vec(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + len));
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"A_n",    "E6",  "E8",    "U",     "<2d>",              "A2(-1)",         "A2*(3)",
          "E6*(3)", "K12tilde", "K12", "M_Z3", "E6^3'", "LambdaK3_standard", "LambdaK3_glued",
          "U+A2(-1)"};
}

NamedLattice build(const std::string& name_in, long param) {
  std::string name = name_in;
  std::smatch m;
  if (std::regex_match(name, m, std::regex("A_?([0-9]+)"))) {
    param = std::stol(m[1]);
    name = "A_n";
  } else if (std::regex_match(name, m, std::regex("<([0-9]+)>"))) {
    long v = std::stol(m[1]);
    if (v % 2) throw CatalogError("<" + m[1].str() + "> is not even");
    param = v / 2;
    name = "<2d>";
  }
  if (name == "A_n") return plain("A" + std::to_string(param ? param : 2), root_lattice_A(param ? static_cast<int>(param) : 2));
  if (name == "E6") return plain(name, lattice_E6());
  if (name == "E8") return plain(name, lattice_E8());
  if (name == "U") return plain(name, lattice_U());
  if (name == "<2d>") {
    Lattice l = lattice_2d(param ? param : 1);
    return plain(l.name(), l);
  }
  if (name == "A2(-1)") return plain(name, lattice_A2m());
  if (name == "A2*(3)") return plain(name, scaled_dual(root_lattice_A(2), 3, name));
  if (name == "E6*(3)") return plain(name, scaled_dual(lattice_E6(), 3, name));
  if (name == "K12tilde") return plain(name, k12tilde());
  if (name == "K12") return {name, overlattice(k12tilde(), {{k12::z(), "z"}}, name)};
  if (name == "M_Z3") {
    std::vector<Lattice> blocks(6, root_lattice_A(2));
    Lattice a26 = direct_sum(blocks, "A2^6");
    return {name, overlattice(a26, {{mz3::mhat(), "Mhat"}}, name)};
  }
  if (name == "E6^3'") {
    Lattice e63 = direct_sum({lattice_E6(), lattice_E6(), lattice_E6()}, "E6^3");
    return {name, overlattice(e63, {{slice(lam::x(), 4, 18), "x"}}, name)};
  }
  if (name == "LambdaK3_standard") {
    return plain(name, direct_sum({lattice_U(), lattice_U(), lattice_U(), lattice_E8(), lattice_E8()}, name));
  }
  if (name == "LambdaK3_glued")
    return {name, overlattice(lam::base(), {{lam::x(), "x"}, {lam::y(), "y"}}, name)};
  if (name == "U+A2(-1)") return plain(name, direct_sum({lattice_U(), lattice_A2m()}, name));
  throw CatalogError("unknown lattice name: " + name_in);
}

}  // namespace k3lat
