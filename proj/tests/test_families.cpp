#include <doctest.h>

#include "gen.hpp"
#include "k3lat/families.hpp"

using namespace k3lat;

TEST_CASE("descriptors") {
  NSDescriptor x{Side::X, Variant::Primed, 6};
  CHECK(x.str() == "PrimedX(6)");
  CHECK_NOTHROW(validate(x));
  CHECK_THROWS_AS(validate({Side::X, Variant::Primed, 4}), FamilyError);
  CHECK_THROWS_AS(validate({Side::Y, Variant::Plain, 0}), FamilyError);
  CHECK(parse_variant("primed") == Variant::Primed);
  CHECK(parse_side("Y") == Side::Y);
  CHECK_THROWS_AS(parse_side("Z"), FamilyError);
  CHECK(x.to_json()["label"] == "PrimedX(6)");
}

TEST_CASE("classification follows the mod-3 rule") {
  gen::Rng r(41);
  for (int t = 0; t < 12; ++t) {
    long d = r.range(1, 60);
    for (Side s : {Side::X, Side::Y}) {
      auto c = classify_overlattice(s, d);
      CHECK(c.has_value() == (d % 3 == 0));
      if (!c) continue;
      Lattice l = c->lattice.as_lattice();
      CHECK(l.is_even());
      CHECK(c->summands_primitive);
      RelativeLattice plain = s == Side::X ? plain_x_lattice(d) : plain_y_lattice(d);
      CHECK(c->lattice.index_of(plain) == 3);
      CHECK(abs(l.det()) * 9 == abs(plain.as_lattice().det()));
      CHECK(c->q_g3 == mod2(-Q(2 * d, 9)));
    }
  }
}

TEST_CASE("q(g/3) depends on d mod 9") {
  CHECK(classify_overlattice_X(3)->q_g3 == Q(4, 3));
  CHECK(classify_overlattice_X(6)->q_g3 == Q(2, 3));
  CHECK(classify_overlattice_X(9)->q_g3 == 0);
  CHECK(classify_overlattice_X(3)->g_label == "k1+k3+k7+k9");
}

TEST_CASE("admissible glues at small degree") {
  for (Side s : {Side::X, Side::Y}) {
    auto none = enumerate_admissible_glues(s, 4);
    CHECK(none.survivors.empty());
    auto rep = enumerate_admissible_glues(s, 3);
    CHECK(!rep.survivors.empty());
    CHECK(rep.all_genus_match);
    CHECK(rep.q_values.size() == 1);
    CHECK(rep.candidates == (s == Side::X ? 728u : 80u));
  }
}

TEST_CASE("embedding indices") {
  CHECK(embed_NSX(2, Variant::Plain).index == 1);
  CHECK(embed_NSX(3, Variant::Primed).index == 3);
  CHECK(embed_NSY(2, Variant::Plain).index == 1);
  CHECK(embed_NSY(6, Variant::Primed).index == 3);
}

TEST_CASE("quotient correspondence and its inverse are mutually inverse") {
  for (long d : {1L, 2L, 4L}) {
    NSDescriptor x{Side::X, Variant::Plain, d};
    QuotientResult q = ns_of_quotient(x);
    CHECK(q.matches());
    CHECK(q.target == NSDescriptor{Side::Y, Variant::Primed, 3 * d});
    CHECK(q.polarization_square == 6 * d);
    QuotientResult b = ns_of_quotient_inverse(q.target);
    CHECK(b.matches());
    CHECK(b.target == x);
  }
  QuotientResult p = ns_of_quotient({Side::X, Variant::Primed, 6});
  CHECK(p.target == NSDescriptor{Side::Y, Variant::Plain, 2});
  CHECK(p.matches());
}

TEST_CASE("expected_quotient / expected_cover are inverse") {
  for (long d = 1; d <= 18; ++d)
    for (Variant v : {Variant::Plain, Variant::Primed}) {
      if (v == Variant::Primed && d % 3) continue;
      NSDescriptor x{Side::X, v, d};
      CHECK(expected_cover(expected_quotient(x)) == x);
    }
}

TEST_CASE("Euler characteristics of D1, D2, D3 sum to d + 2") {
  for (long d = 1; d <= 12; ++d) {
    auto want = expected_chi({Side::X, Variant::Plain, d});
    REQUIRE(want.size() == 3);
    CHECK(want[0] + want[1] + want[2] == d + 2);
    CHECK(chi(Q(2 * d - 4)) == d);
  }
}

TEST_CASE("eigenspace dimensions for small degree") {
  CHECK(eigenspace_dimensions(1, Variant::Plain).dims == vec_from_ints({1, 1, 1}));
  CHECK(eigenspace_dimensions(2, Variant::Plain).dims == vec_from_ints({2, 1, 1}));
  CHECK(eigenspace_dimensions(3, Variant::Plain).dims == vec_from_ints({2, 2, 1}));
  CHECK(eigenspace_dimensions(3, Variant::Primed).dims == vec_from_ints({3, 1, 1}));
}

TEST_CASE("pull-backs of the divisors") {
  for (NSDescriptor y : {NSDescriptor{Side::Y, Variant::Plain, 2}, NSDescriptor{Side::Y, Variant::Primed, 6}})
    for (const auto& p : pullback_Di(y)) CHECK_MESSAGE(p.equal, p.label);
}

TEST_CASE("divisor integrality in the plain case") {
  DivisorTriple t = divisors_Di({Side::Y, Variant::Plain, 4});
  CHECK(t.orientation == "n/a");
  CHECK(t.all_integral());
}

TEST_CASE("isogeny tower") {
  auto rungs = isogeny_tower(1, 3);
  REQUIRE(rungs.size() == 3);
  CHECK(rungs[0].degree2 == 6);
  CHECK(rungs[1].degree2 == 18);
  CHECK(rungs[2].degree2 == 54);
  for (const auto& r : rungs) {
    CHECK(r.genus_equal);
    CHECK(r.step_ok);
  }
  CHECK_THROWS_AS(isogeny_tower(0, 2), FamilyError);
}

TEST_CASE("built-in isometries of K12 and M_Z3") {
  Lattice k = build("K12").gram_lattice();
  RelativeLattice kr = build("K12").lattice;
  Lattice kt = kr.reference();
  for (const Matrix& m : {k12_sigma(), k12_phi()}) {
    CHECK(m * kt.gram() * m.transpose() == kt.gram());
    for (const auto& b : kr.basis()) CHECK(kr.contains(vec_mul(b, m)));
  }
  CHECK(matrix_power(k12_sigma(), 3) == Matrix::identity(12));
  RelativeLattice mr = build("M_Z3").lattice;
  Lattice a = mr.reference();
  for (int j = 1; j <= 5; ++j) CHECK(mz3_block_swap(j) * a.gram() * mz3_block_swap(j).transpose() == a.gram());
  Matrix o = mz3_orientation_swap();
  CHECK(o * a.gram() * o.transpose() == a.gram());
  for (const auto& b : mr.basis()) CHECK(mr.contains(vec_mul(b, o)));
}

TEST_CASE("orbits on A_M with built-in generators equal the level sets") {
  OrbitOptions opt;
  opt.use_search = false;
  OrbitCheck c = orbit_check_M(opt);
  CHECK(c.group_order == 81);
  CHECK(c.equal);
  CHECK(c.levels.size() == 3);
}
