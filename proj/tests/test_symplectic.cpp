#include <doctest.h>

#include "k3lat/symplectic.hpp"

using namespace k3lat;

TEST_CASE("sigma has order 3 and preserves the form") {
  SigmaAction s = sigma_action();
  Matrix m = s.matrix;
  CHECK(matrix_power(m, 3) == Matrix::identity(lam::rank));
  CHECK(m != Matrix::identity(lam::rank));
  Matrix g = lam::base().gram();
  CHECK(m * g * m.transpose() == g);
  CHECK(s.glued_matrix.is_integral());
}

TEST_CASE("make_action rejects a non-isometry") {
  Matrix bad = Matrix::identity(lam::rank);
  bad(lam::u1, lam::u1) = 2;
  CHECK_THROWS_AS(make_action(build("LambdaK3_glued").lattice, bad), SymplecticError);
}

TEST_CASE("invariant and coinvariant lattices") {
  SigmaAction s = sigma_action();
  RelativeLattice inv = invariant_sublattice(s), co = coinvariant_sublattice(s);
  CHECK(inv.rank() == 10);
  CHECK(co.rank() == 12);
  Lattice il = inv.as_lattice(), cl = co.as_lattice();
  CHECK(abs(il.det()) == 729);
  CHECK(abs(cl.det()) == 729);
  CHECK(il.signature() == Signature{3, 7, 0});
  CHECK(cl.signature() == Signature{0, 12, 0});
  for (const auto& a : inv.basis())
    for (const auto& b : co.basis()) CHECK(inv.pair(a, b) == 0);
  // Unimodular ambient: the two discriminant forms are opposite.
  CHECK(fqf_isomorphic(discriminant_form(il), discriminant_form(cl).negated()).isomorphic);
}

TEST_CASE("coinvariant lattice matches K12 vector by vector") {
  CoinvariantMatch m = match_coinvariant_with_k12(coinvariant_sublattice(sigma_action()));
  CHECK(m.same_lattice);
  CHECK(m.z_consistent);
  CHECK(m.gram_equal);
}

TEST_CASE("push-forward and pull-back") {
  Matrix p = push_forward().matrix, b = pull_back().matrix, s = sigma_base_matrix();
  CHECK(p * b == Matrix::identity(lam::rank) + s + s * s);
  Matrix gl = lam::base().gram(), gy = h2y::base().gram();
  // Adjunction in matrix form: B G_X = G_Y P^T.
  CHECK(b * gl == gy * p.transpose());
  Matrix a = a2_base_change();
  CHECK(a.rows() == 2);
}

TEST_CASE("H^2 of the quotient") {
  RelativeLattice h = build_H2Y();
  Lattice l = h.as_lattice();
  CHECK(abs(l.det()) == 1);
  CHECK(l.is_even());
  CHECK(l.signature() == Signature{3, 19, 0});
  CHECK_THROWS(build_H2Y(true));
  CHECK(h.contains_lattice(pushforward_image()));
  LatticeMap b = pull_back();
  RelativeLattice glued = build("LambdaK3_glued").lattice;
  for (const auto& v : h.basis()) CHECK(glued.contains(b.apply(v)));
}
