#include "k3lat/symplectic.hpp"

#include <array>

namespace k3lat {

Matrix matrix_power(const Matrix& m, int k) {
  Matrix r = Matrix::identity(m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

SigmaAction make_action(const RelativeLattice& domain, const Matrix& matrix) {
  const Matrix& g = domain.reference().gram();
  if (matrix * g * matrix.transpose() != g)
    throw SymplecticError("action does not preserve the Gram matrix of " + domain.name());
  Matrix b = domain.basis_matrix();
  Matrix glued = b * matrix * inverse(b);
  if (!glued.is_integral())
    throw SymplecticError("action is not integral on the glued basis of " + domain.name());
  return {domain, matrix, glued};
}

Matrix sigma_base_matrix() {
  Matrix s(lam::rank, lam::rank);
  for (std::size_t i = 0; i < 4; ++i) s(i, i) = 1;
  for (int b = 1; b <= 3; ++b)
    for (int i = 1; i <= 6; ++i) s(lam::e(b, i), lam::e(b % 3 + 1, i)) = 1;
  return s;
}

SigmaAction sigma_action() {
  return make_action(build("LambdaK3_glued").lattice, sigma_base_matrix());
}

SigmaAction identity_action() {
  return make_action(build("LambdaK3_glued").lattice, Matrix::identity(lam::rank));
}

RelativeLattice invariant_sublattice(const SigmaAction& s) {
  const std::size_t n = s.matrix.rows();
  auto fixed = left_kernel_basis(s.matrix - Matrix::identity(n));
  return saturate_in(s.domain, fixed, s.domain.name() + "^sigma");
}

RelativeLattice coinvariant_sublattice(const SigmaAction& s) {
  RelativeLattice inv = invariant_sublattice(s);
  return orthogonal_complement(s.domain, inv.basis(), s.domain.name() + "_sigma");
}

Vec k12_to_lambda(const Vec& c) {
  Vec r(lam::rank);
  for (int i = 1; i <= 12; ++i)
    if (sgn(c[static_cast<std::size_t>(i - 1)])) r = r + c[static_cast<std::size_t>(i - 1)] * lam::k(i);
  return r;
}

CoinvariantMatch match_coinvariant_with_k12(const RelativeLattice& coinvariant) {
  CoinvariantMatch m;
  std::vector<Vec> gens;
  for (int i = 1; i <= 12; ++i) gens.push_back(lam::k(i));
  gens.push_back(lam::z());
  RelativeLattice spanned(coinvariant.reference(), gens);
  m.same_lattice = spanned.same_lattice(coinvariant);
  m.z_consistent = k12_to_lambda(k12::z()) == lam::z();
  auto basis = k12::match_basis();
  const std::size_t r = basis.size();
  Lattice kt = build("K12tilde").lattice.reference();
  m.gram_coinvariant = Matrix(r, r);
  m.gram_k12 = Matrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      m.gram_coinvariant(i, j) =
          coinvariant.reference().pair(k12_to_lambda(basis[i]), k12_to_lambda(basis[j]));
      m.gram_k12(i, j) = kt.pair(basis[i], basis[j]);
    }
  RelativeLattice k12 = build("K12").lattice;
  bool basis_ok = RelativeLattice(kt, basis).same_lattice(k12);
  m.gram_equal = basis_ok && m.gram_coinvariant == m.gram_k12;
  return m;
}

LatticeMap push_forward() {
  Matrix p(lam::rank, h2y::rank);
  p(lam::a1, h2y::a1) = 1;
  p(lam::a1, h2y::a2) = 2;
  p(lam::a2, h2y::a1) = 1;
  p(lam::a2, h2y::a2) = -1;
  p(lam::u1, h2y::u1) = 1;
  p(lam::u2, h2y::u2) = 1;
  for (int b = 1; b <= 3; ++b)
    for (int i = 1; i <= 6; ++i) p(lam::e(b, i), h2y::e(i)) = 1;
  return {"LambdaK3", "H2(Y)", p};
}

LatticeMap pull_back() {
  Matrix p = push_forward().matrix;
  Matrix b = h2y::base().gram() * p.transpose() * inverse(lam::base().gram());
  return {"H2(Y)", "LambdaK3", b};
}

Matrix a2_base_change() {
  Matrix c(2, 2);
  c(0, 0) = Q(1, 3);
  c(0, 1) = Q(2, 3);
  c(1, 0) = Q(1, 3);
  c(1, 1) = Q(-1, 3);
  return c;
}

RelativeLattice build_H2Y(bool literal) {
  std::vector<GlueVector> glues{{h2y::mhat(), "Mhat"}};
  for (int i = 1; i <= 4; ++i)
    glues.push_back({literal ? h2y::n_literal(i) : h2y::n(i), "n" + std::to_string(i)});
  return overlattice(h2y::base(), glues, "H2(Y)");
}

RelativeLattice h2y_base_with_M() {
  return overlattice(h2y::base(), {{h2y::mhat(), "Mhat"}}, "A2(-1)+U(3)+E6+M_Z3");
}

RelativeLattice pushforward_image() {
  RelativeLattice glued = build("LambdaK3_glued").lattice;
  LatticeMap p = push_forward();
  std::vector<Vec> rows;
  for (const auto& b : glued.basis()) rows.push_back(p.apply(b));
  return RelativeLattice(h2y::base(), rows, "pi_*(LambdaK3)");
}

namespace {

Vec m_combo(const std::vector<std::array<long, 3>>& terms) {
  Vec r(h2y::rank);
  for (const auto& t : terms) {
    r[h2y::m(1, static_cast<int>(t[0]))] += t[1];
    r[h2y::m(2, static_cast<int>(t[0]))] += t[2];
  }
  return r;
}

Vec m_part(const Vec& v) {
  Vec r(v);
  for (std::size_t i = 0; i < 10; ++i) r[i] = 0;
  return r;
}

}  // namespace

std::vector<GlueFormCheck> compare_glue_forms() {
  LatticeMap p = push_forward();
  auto px = [&](std::size_t idx) { return p.apply(lam::unit(idx)); };
  std::vector<Vec> curve(4);
  curve[0] = Q(1, 3) * (Q(2) * px(lam::a2) - p.apply(lam::y()) +
                        m_combo({{2, 1, 2}, {3, 2, 1}, {4, 1, 2}, {5, 2, 1}}));
  curve[1] = Q(1, 3) * (px(lam::e(1, 1)) + Q(2) * px(lam::e(1, 2)) + px(lam::e(1, 4)) +
                        Q(2) * px(lam::e(1, 5)) + m_combo({{1, 2, 1}, {3, 1, 2}, {4, 2, 1}, {5, 1, 2}}));
  curve[2] = Q(1, 3) * (px(lam::u1) + m_combo({{1, 1, 2}, {2, 1, 2}, {3, 1, 2}}));
  curve[3] = Q(1, 3) * (px(lam::u2) + m_combo({{1, 1, 2}, {2, 1, 2}, {4, 1, 2}}));
  RelativeLattice base_m = h2y_base_with_M();
  std::vector<GlueFormCheck> out;
  for (int i = 1; i <= 4; ++i) {
    GlueFormCheck c;
    c.index = i;
    c.b_form = h2y::n(i);
    c.curve_form = curve[static_cast<std::size_t>(i - 1)];
    c.difference = c.curve_form - c.b_form;
    c.same_class = base_m.contains(c.difference);
    c.m_parts_agree = base_m.contains(m_part(c.difference));
    out.push_back(c);
  }
  return out;
}

std::vector<PullbackGlueCheck> pullback_glue_table() {
  LatticeMap b = pull_back();
  std::vector<PullbackGlueCheck> out;
  auto add = [&](std::string name, const Vec& src, const Vec& expected) {
    PullbackGlueCheck c{std::move(name), b.apply(src), expected, false};
    c.equal = c.computed == c.expected;
    out.push_back(c);
  };
  add("pi^*(a1')", h2y::unit(h2y::a1), lam::unit(lam::a1) + Q(2) * lam::unit(lam::a2));
  add("pi^*(n1)", h2y::n(1), Q(2) * lam::unit(lam::a2) - lam::y());
  add("pi^*(n2)", h2y::n(2), lam::x());
  add("pi^*(n3)", h2y::n(3), lam::unit(lam::u1));
  add("pi^*(n4)", h2y::n(4), lam::unit(lam::u2));
  return out;
}

}  // namespace k3lat
