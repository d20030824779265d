#include <doctest.h>

#include "k3lat/catalog.hpp"
#include "k3lat/discform.hpp"

using namespace k3lat;

TEST_CASE("root lattices") {
  CHECK(lattice_E6().det() == 3);
  CHECK(lattice_E8().det() == 1);
  CHECK(lattice_E8().is_even());
  CHECK(lattice_E8().signature() == Signature{0, 8, 0});
  CHECK(short_vectors(lattice_E6(), 2).size() == 72);
}

TEST_CASE("K12tilde and K12") {
  Lattice kt = build("K12tilde").gram_lattice();
  CHECK(kt.det() == 6561);
  Lattice k = build("K12").gram_lattice();
  CHECK(k.det() == 729);
  CHECK(k.is_even());
  CHECK(k.signature() == Signature{0, 12, 0});
  // Coxeter-Todd lattice: no roots, 756 vectors of norm 4.
  CHECK(short_vectors(k, 2).empty());
  CHECK(short_vectors(k, 4).size() == 756);
  auto f = discriminant_form(k);
  CHECK(f.size() == 729);
  CHECK(f.is_elementary(3));
}

TEST_CASE("K12 match basis spans K12") {
  RelativeLattice k = build("K12").lattice;
  RelativeLattice m(k.reference(), k12::match_basis());
  CHECK(m.same_lattice(k));
  CHECK(k.contains(k12::z()));
  CHECK(!is_integral(k12::z()));
  CHECK(k.reference().norm(k12::z()).get_den() == 1);
}

TEST_CASE("M_Z3") {
  NamedLattice m = build("M_Z3");
  Lattice l = m.gram_lattice();
  CHECK(l.det() == 81);
  CHECK(l.is_even());
  CHECK(m.lattice.index_over_reference() == 3);
  CHECK(m.lattice.reference().norm(mz3::mhat()) == -4);
}

TEST_CASE("scaled duals") {
  Lattice e = build("E6*(3)").gram_lattice();
  CHECK(e.rank() == 6);
  CHECK(e.det() == 243);
  Lattice a = build("A2*(3)").gram_lattice();
  CHECK(fqf_isomorphic(discriminant_form(a), discriminant_form(root_lattice_A(2))).isomorphic);
  CHECK_THROWS_AS(scaled_dual(lattice_E6(), 2), CatalogError);
}

TEST_CASE("both K3 lattice models are even unimodular of signature (3,19)") {
  for (const char* name : {"LambdaK3_standard", "LambdaK3_glued"}) {
    Lattice l = build(name).gram_lattice();
    CHECK(l.rank() == 22);
    CHECK(abs(l.det()) == 1);
    CHECK(l.is_even());
    CHECK(l.signature() == Signature{3, 19, 0});
  }
  CHECK(compare_genus(build("LambdaK3_standard").gram_lattice(), build("LambdaK3_glued").gram_lattice()).same);
}

TEST_CASE("frame vectors in the K3 lattice") {
  Lattice b = lam::base();
  for (int i = 1; i <= 12; ++i) CHECK(b.norm(lam::k(i)) == -4);
  CHECK(b.norm(lam::x()) == -4);
  CHECK(b.norm(lam::y()) == -2);
  for (int i = 1; i <= 6; ++i) CHECK(b.pair(lam::k(i), lam::x()) == 0);
}

TEST_CASE("H^2(Y) frame glue classes pair integrally") {
  Lattice b = h2y::base();
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) CHECK(b.pair(h2y::n(i), h2y::n(j)).get_den() == 1);
  CHECK(b.pair(h2y::n_literal(1), h2y::n_literal(4)).get_den() != 1);
}

TEST_CASE("build: names, parameters and errors") {
  CHECK(build("A5").gram_lattice().rank() == 5);
  CHECK(build("<6>").gram_lattice().det() == 6);
  CHECK(build("<2d>", 4).gram_lattice().det() == 8);
  CHECK_THROWS_AS(build("<7>"), CatalogError);
  CHECK_THROWS_AS(build("nope"), CatalogError);
  for (const auto& n : catalog_names()) CHECK_NOTHROW(build(n, 2));
}
