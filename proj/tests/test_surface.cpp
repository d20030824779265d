#include <doctest.h>

#include "k3lat/catalog.hpp"
#include "k3lat/example_surface.hpp"

using namespace k3lat;
using namespace k3lat::surface;

TEST_CASE("symbol Gram") {
  Matrix g = build_symbol_gram();
  CHECK(g.rows() == 24);
  CHECK(g.is_symmetric());
  SymbolGramReport r = symbol_gram_report();
  CHECK(r.rank == 20);
  CHECK(r.kernel_dim == 4);
  CHECK(r.squares_minus_two);
}

TEST_CASE("fibers have square 0 and meet O once") {
  Matrix g = build_symbol_gram();
  for (int j = 1; j <= 3; ++j) {
    CHECK(bilinear(fiber(j), g, fiber(j)) == 0);
    CHECK(bilinear(fiber(j), g, symbol(O)) == 1);
    CHECK(bilinear(fiber(j), g, symbol(T1)) == 1);
    for (int i = 0; i <= 6; ++i) CHECK(bilinear(fiber(j), g, symbol(C(i, j))) == 0);
  }
  CHECK_THROWS(C(7, 1));
}

TEST_CASE("stated relations lie in the kernel") {
  for (const auto& r : verify_relations()) CHECK_MESSAGE(r.in_kernel, r.name);
}

TEST_CASE("translation by T1") {
  SigmaPermutationReport s = verify_sigma_permutation();
  CHECK(s.order_three);
  CHECK(s.gram_preserved);
  CHECK(s.blocks_cycled);
  CHECK(s.G_fixed);
  CHECK(s.D_fixed);
}

TEST_CASE("E6 blocks from curves") {
  Matrix g = build_symbol_gram();
  for (int b = 1; b <= 3; ++b) {
    auto blk = e6_block(b);
    REQUIRE(blk.size() == 6);
    Matrix m(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) m(i, j) = bilinear(blk[i], g, blk[j]);
    CHECK(m == lattice_E6().gram());
  }
  CHECK_THROWS(e6_block(4));
}

TEST_CASE("Neron-Severi reconstruction") {
  NSReconstruction r = reconstruct_NS();
  CHECK(r.u_gram == Matrix{{-2, 1}, {1, 0}});
  CHECK(abs(r.det) == 3);
  CHECK(r.index == 3);
  CHECK(r.e6_blocks_ok);
  CHECK(r.disc_opposite_A2);
  CHECK(r.G_is_x);
  CHECK(r.z_orthogonal_to_invariants);
  CHECK(r.z_matches_frame);
  CHECK(r.ns.as_lattice().signature() == Signature{1, 19, 0});
}
