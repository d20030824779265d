#include <doctest.h>

#include "gen.hpp"
#include "k3lat/catalog.hpp"
#include "k3lat/lattice.hpp"

using namespace k3lat;

TEST_CASE("basic invariants of small lattices") {
  Lattice u = lattice_U();
  CHECK(u.det() == -1);
  CHECK(u.is_even());
  CHECK(u.is_unimodular());
  CHECK(u.signature() == Signature{1, 1, 0});
  Lattice a2 = root_lattice_A(2);
  CHECK(a2.det() == 3);
  CHECK(a2.signature() == Signature{0, 2, 0});
  Lattice odd("odd", Matrix{{1}});
  CHECK(!odd.is_even());
  CHECK_THROWS_AS(Lattice("bad", Matrix{{1, 2}, {3, 1}}), LatticeError);
  CHECK_THROWS_AS(Lattice("half", Matrix::from_rows({{Q(1, 2)}}, 1)), LatticeError);
}

TEST_CASE("signature of A_n, direct sums and rescaling") {
  for (int n = 1; n <= 8; ++n) {
    Lattice a = root_lattice_A(n);
    CHECK(a.det() == ((n % 2) ? -(n + 1) : n + 1));
    CHECK(a.signature() == Signature{0, n, 0});
  }
  Lattice s = direct_sum({lattice_U(), lattice_E8(), rescale(lattice_U(), 3)});
  CHECK(s.rank() == 12);
  CHECK(s.signature() == Signature{2, 10, 0});
  CHECK(s.det() == 9);
}

TEST_CASE("signature_of agrees with a diagonal congruent form") {
  gen::Rng r(21);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(r.range(1, 6));
    Matrix d(n, n);
    int pos = 0, neg = 0, zero = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long v = r.range(-3, 3);
      d(i, i) = v;
      (v > 0 ? pos : v < 0 ? neg : zero)++;
    }
    Matrix p = gen::unimodular(r, n, 10);
    CHECK(signature_of(p * d * p.transpose()) == Signature{pos, neg, zero});
  }
}

TEST_CASE("overlattice of A2 + A2(-1) by the diagonal glue is U + A2-like unimodular") {
  // (a1 + 2a2)/3 + (b1 + 2b2)/3 has norm -2/3 + 2/3 = 0.
  Lattice base = direct_sum({root_lattice_A(2), lattice_A2m()});
  Vec g = vec_from_ints({1, 2, 1, 2});
  g = Q(1, 3) * g;
  RelativeLattice o = overlattice(base, {{g, "g"}});
  CHECK(o.index_over_reference() == 3);
  Lattice l = o.as_lattice();
  CHECK(abs(l.det()) == 1);
  CHECK(l.is_even());
}

TEST_CASE("overlattice rejects non-integral glue") {
  Vec g = Q(1, 3) * vec_from_ints({1, 2});
  CHECK_THROWS_AS(overlattice(root_lattice_A(2), {{g, "g"}}), LatticeError);
}

TEST_CASE("orthogonal complement and saturation in U + U") {
  Lattice uu = direct_sum({lattice_U(), lattice_U()});
  RelativeLattice whole = RelativeLattice::whole(uu);
  Vec v = vec_from_ints({1, 1, 0, 0});  // norm 2
  RelativeLattice c = orthogonal_complement(whole, {v});
  CHECK(c.rank() == 3);
  CHECK(abs(c.as_lattice().det()) == 2);
  for (const auto& b : c.basis()) CHECK(uu.pair(b, v) == 0);
  RelativeLattice s = saturate_in(whole, {vec_from_ints({2, 2, 0, 0})});
  CHECK(s.contains(v));
  CHECK(!RelativeLattice(uu, {vec_from_ints({2, 2, 0, 0})}).contains(v));
}

TEST_CASE("coords_of and index_of") {
  Lattice e8 = lattice_E8();
  RelativeLattice w = RelativeLattice::whole(e8);
  std::vector<Vec> twice;
  for (std::size_t i = 0; i < 8; ++i) {
    Vec v(8);
    v[i] = 2;
    twice.push_back(v);
  }
  RelativeLattice sub(e8, twice);
  CHECK(w.index_of(sub) == 256);
  CHECK(w.contains_lattice(sub));
  CHECK(!sub.contains_lattice(w));
}

TEST_CASE("JSON round trip of a lattice") {
  Lattice e6 = lattice_E6();
  Lattice back = lattice_from_json(to_json(e6));
  CHECK(back.gram() == e6.gram());
  CHECK(back.name() == e6.name());
  CHECK(back.labels() == e6.labels());
  nlohmann::json bad = {{"gram", {{1, 2}, {3}}}};
  CHECK_THROWS(lattice_from_json(bad));
}

TEST_CASE("rational strings") {
  for (const char* s : {"0", "-3", "4/3", "-2/9"}) CHECK(rational_str(parse_rational(s)) == s);
}
