#pragma once

#include <string>
#include <vector>

#include "k3lat/discform.hpp"

// The rank-20 elliptic K3 surface with three IV* fibers and 3-torsion sections T1, T2:
// curve classes as symbols, their intersection numbers, translation by T1 and the
// reconstruction of NS = U + (E6^3)'.
//
// Symbol order (24): O, T1, T2, then C_0^(1)..C_6^(1), C_0^(2)..C_6^(2), C_0^(3)..C_6^(3).

namespace k3lat::surface {

constexpr std::size_t nsymbols = 24;
constexpr std::size_t O = 0, T1 = 1, T2 = 2;
std::size_t C(int i, int j);  // i = 0..6, j = 1..3
std::vector<std::string> symbol_names();
Vec symbol(std::size_t idx);

// Intersection numbers of the 24 symbols (degenerate, rank 20).
Matrix build_symbol_gram();

struct SymbolGramReport {
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  bool symmetric = false;
  bool squares_minus_two = false;
};
SymbolGramReport symbol_gram_report();

// Classes as rational combinations of symbols.
Vec fiber(int j);         // C0 + 2C1 + 3C2 + 2C3 + C4 + 2C5 + C6 in fiber j
Vec T1_expression();      // 2F + O - (1/3) sum_j (3C1 + 6C2 + 5C3 + 4C4 + 4C5 + 2C6)
Vec T2_expression();      // 2F + O - (1/3) sum_j (3C1 + 6C2 + 4C3 + 2C4 + 5C5 + 4C6)
Vec G_class();            // (C1' + 2C0' + C0'' + 2C1'' + ... )/3, symmetric in the three E6 copies
Vec G_integral();         // F - C1^(1) - 2C2^(1) - C3^(1) - C5^(1) - C2^(2)
Vec D_class();            // 3O + sum_j (C1^(j) + 2 C0^(j))
Vec z_curves();           // 2F - 2C1^(1) - 4C2^(1) - 3C3^(1) - 2C4^(1) - 3C5^(1) - 2C6^(1) - 2C2^(2) - 2C3^(2) - C4^(2) - 2C5^(2) - C6^(2)
// The six classes of the b-th E6 copy, in the order e1..e6 of the E6 frame.
std::vector<Vec> e6_block(int b);

struct RelationCheck {
  std::string name;
  Vec relation;          // denominators cleared
  bool in_kernel = false;
  std::string detail;    // nonzero pairings with symbols when not in the kernel
};
std::vector<RelationCheck> verify_relations();

struct SigmaPermutationReport {
  std::vector<std::size_t> permutation;  // symbol i -> permutation[i]
  bool order_three = false;
  bool gram_preserved = false;
  bool blocks_cycled = false;  // block 1 -> 2 -> 3 -> 1, entrywise
  bool G_fixed = false;
  bool D_fixed = false;
};
std::vector<std::size_t> sigma_permutation();
Vec apply_sigma(const Vec& v);
SigmaPermutationReport verify_sigma_permutation();

struct NSReconstruction {
  Lattice frame;             // Gram of the 18 E6 classes, C2^(3) and D
  RelativeLattice ns;        // frame + G
  Vec G_coords;              // G in frame coordinates
  Matrix u_gram;             // {C2^(3), D}
  bool u_ok = false;
  bool e6_blocks_ok = false;  // 18 classes give three orthogonal E6 Gram blocks, orthogonal to U
  Q det;
  Z index = 0;
  bool disc_opposite_A2 = false;
  bool G_is_x = false;        // G coordinates equal v1 + v2 + v3
  bool z_orthogonal_to_invariants = false;
  bool z_matches_frame = false;  // z_curves equals z of the K12 frame modulo the kernel
  bool ok() const;
};
NSReconstruction reconstruct_NS();

}  // namespace k3lat::surface
