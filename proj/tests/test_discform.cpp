#include <doctest.h>

#include <map>

#include "gen.hpp"
#include "k3lat/catalog.hpp"
#include "k3lat/discform.hpp"

using namespace k3lat;

namespace {

std::map<Q, int> value_counts(const FiniteQuadraticForm& f) {
  std::map<Q, int> m;
  for (std::uint64_t i = 0; i < f.size(); ++i) ++m[f.q(f.element(i))];
  return m;
}

int sig_mod8(const Lattice& l) {
  Signature s = l.signature();
  return ((s.pos - s.neg) % 8 + 8) % 8;
}

}  // namespace

TEST_CASE("discriminant form of <2d> is Z/2d with q(1) = 1/2d") {
  for (long d = 1; d <= 12; ++d) {
    FiniteQuadraticForm f = discriminant_form(lattice_2d(d));
    REQUIRE(f.ngens() == 1);
    CHECK(f.orders()[0] == 2 * d);
    CHECK(f.size() == static_cast<std::uint64_t>(2 * d));
    // Values on all elements: k^2 / 2d mod 2, independent of the chosen generator.
    std::map<Q, int> want;
    for (long k = 0; k < 2 * d; ++k) ++want[mod2(Q(k * k, 2 * d))];
    CHECK(value_counts(f) == want);
  }
}

TEST_CASE("discriminant forms of A2 and A2(-1)") {
  auto f = discriminant_form(root_lattice_A(2));
  CHECK(value_counts(f) == std::map<Q, int>{{0, 1}, {Q(4, 3), 2}});
  auto g = discriminant_form(lattice_A2m());
  CHECK(value_counts(g) == std::map<Q, int>{{0, 1}, {Q(2, 3), 2}});
  CHECK(fqf_isomorphic(f.negated(), g).isomorphic);
  CHECK(!fqf_isomorphic(f, g).isomorphic);
}

TEST_CASE("unimodular lattices have trivial discriminant group") {
  CHECK(discriminant_form(lattice_E8()).size() == 1);
  CHECK(discriminant_form(lattice_U()).size() == 1);
}

TEST_CASE("negative definite E6 has discriminant group Z/3 with q = 2/3") {
  auto f = discriminant_form(lattice_E6());
  CHECK(f.size() == 3);
  CHECK(value_counts(f) == std::map<Q, int>{{0, 1}, {Q(2, 3), 2}});
}

TEST_CASE("Milgram residue equals signature mod 8 on random direct sums") {
  gen::Rng r(31);
  std::vector<Lattice> pool{root_lattice_A(1), root_lattice_A(2), root_lattice_A(3), lattice_E6(), lattice_U(),
                            lattice_A2m(),     lattice_2d(1),     lattice_2d(3),     lattice_2d(5), rescale(lattice_U(), 3)};
  for (int t = 0; t < 40; ++t) {
    std::vector<Lattice> parts;
    int k = static_cast<int>(r.range(1, 3));
    for (int i = 0; i < k; ++i) parts.push_back(pool[static_cast<std::size_t>(r.range(0, static_cast<long>(pool.size()) - 1))]);
    Lattice l = direct_sum(parts);
    CHECK(milgram_invariant(discriminant_form(l)) == sig_mod8(l));
  }
}

TEST_CASE("discriminant form is an invariant of the isometry class") {
  gen::Rng r(32);
  for (int t = 0; t < 15; ++t) {
    Lattice base = direct_sum({root_lattice_A(2), lattice_2d(r.range(1, 6)), lattice_U()});
    Matrix p = gen::unimodular(r, base.rank(), 10);
    Lattice moved("moved", p * base.gram() * p.transpose());
    auto f = discriminant_form(base), g = discriminant_form(moved);
    FqfIsoResult res = fqf_isomorphic(f, g);
    CHECK(res.isomorphic);
    REQUIRE(res.witness.has_value());
    CHECK(verify_fqf_witness(f, g, *res.witness));
  }
}

TEST_CASE("fqf_isomorphic separates <2> + <2> from <4> and Z/4 forms") {
  auto a = discriminant_form(direct_sum({lattice_2d(1), lattice_2d(1)}));
  auto b = discriminant_form(lattice_2d(2));
  CHECK(!fqf_isomorphic(a, b).isomorphic);
  auto c = discriminant_form(direct_sum({lattice_2d(2), lattice_2d(1)}));
  auto d = discriminant_form(direct_sum({lattice_2d(1), lattice_2d(2)}));
  CHECK(fqf_isomorphic(c, d).isomorphic);
}

TEST_CASE("3-elementary forms: determinant class decides") {
  auto a2 = discriminant_form(root_lattice_A(2));
  auto a2a2 = a2.direct_sum(a2);
  auto mixed = a2.direct_sum(a2.negated());
  CHECK(a2a2.is_elementary(3));
  CHECK(det_class_mod3(a2a2) != det_class_mod3(mixed));
  CHECK(value_counts(a2a2) == std::map<Q, int>{{0, 1}, {Q(2, 3), 4}, {Q(4, 3), 4}});
  CHECK(value_counts(mixed) == std::map<Q, int>{{0, 5}, {Q(2, 3), 2}, {Q(4, 3), 2}});
  CHECK(!fqf_isomorphic(a2a2, mixed).isomorphic);
}

TEST_CASE("short vectors: root counts") {
  CHECK(short_vectors(lattice_E8(), 2).size() == 240);
  CHECK(short_vectors(lattice_E6(), 2).size() == 72);
  CHECK(short_vectors(root_lattice_A(2), 2).size() == 6);
  CHECK(short_vectors(root_lattice_A(4), 2).size() == 20);
}

TEST_CASE("isometry search on A2 finds the 12 automorphisms") {
  IsometrySearchResult r = isometry_search(root_lattice_A(2));
  CHECK(r.complete);
  CHECK(r.isometries.size() == 12);
  for (const auto& m : r.isometries) CHECK(is_isometry(root_lattice_A(2), m));
}

TEST_CASE("orbit partition of A2 automorphisms on A_A2 + A_A2") {
  Lattice l = direct_sum({root_lattice_A(2), root_lattice_A(2)});
  DiscriminantGroup dg = discriminant_group(l);
  Matrix swap{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}};
  Matrix neg = Matrix::identity(4).scaled(-1);
  REQUIRE(is_isometry(l, swap));
  std::vector<FormAutomorphism> gens{induced_automorphism(dg, swap), induced_automorphism(dg, neg)};
  auto orbits = orbit_partition(dg.form, gens);
  auto levels = level_sets(dg.form);
  std::size_t total = 0;
  for (const auto& o : orbits) total += o.elements.size();
  CHECK(total == 8);
  // q = 2/3 on (x,y) with x, y nonzero splits into {(1,1),(2,2)} and {(1,2),(2,1)}.
  CHECK(levels.size() == 2);
  CHECK(orbits.size() == 3);
}

TEST_CASE("odd Jordan symbol and genus comparison") {
  Lattice a = direct_sum({lattice_U(), root_lattice_A(2)});
  Lattice b = direct_sum({lattice_U(), lattice_2d(3).renamed("<6>"), lattice_2d(1)});
  CHECK(compare_genus(a, a).same);
  CHECK(!compare_genus(a, b).same);
  auto js = odd_jordan_symbol(root_lattice_A(2).gram(), 3);
  REQUIRE(js.size() == 2);
  int total_rank = 0;
  for (const auto& c : js) total_rank += c.rank;
  CHECK(total_rank == 2);
}
