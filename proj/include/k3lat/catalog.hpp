#pragma once

#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

// Named lattices and the fixed coordinate frames used throughout.
//
// Conventions (frozen):
//   A_n, E6, E8 are negative definite. A2 = [[-2,1],[1,-2]], U = [[0,1],[1,0]].
//   E6 basis e1..e6: chain e1-e2-e3-e4-e5 with e6 attached to e3.
//   E8 basis e1..e8: chain e1-...-e7 with e8 attached to e5.
//   K12tilde basis k1..k12 with Gram [[E6(2), E6], [E6, E6(2)]].

namespace k3lat {

class CatalogError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Lattice root_lattice_A(int n);
Lattice lattice_E6();
Lattice lattice_E8();
Lattice lattice_U();
Lattice lattice_2d(long d);  // <2d>
Lattice lattice_A2m();       // A2(-1)

// Dual basis Gram scaled by n; rejects non-integral results.
Lattice scaled_dual(const Lattice& l, long n, std::string name = "");

struct NamedLattice {
  std::string name;
  RelativeLattice lattice;  // reference = base lattice; equal to it when no glue is involved
  Lattice gram_lattice() const { return lattice.as_lattice(name); }
};

// Names accepted by build(): A_n (param n), E6, E8, U, <2d> (param d), A2(-1), A2*(3), E6*(3),
// K12tilde, K12, M_Z3, E6^3', LambdaK3_standard, LambdaK3_glued, U+A2(-1).
NamedLattice build(const std::string& name, long param = 0);
std::vector<std::string> catalog_names();

// Coordinates on A2(-1) + U + E6^(1) + E6^(2) + E6^(3)  (rank 22).
namespace lam {
constexpr std::size_t rank = 22;
constexpr std::size_t a1 = 0, a2 = 1, u1 = 2, u2 = 3;
std::size_t e(int block, int i);  // block 1..3, i 1..6
Lattice base();
Vec unit(std::size_t idx);
Vec v(int block);  // (e1 + 2e2 + e4 + 2e5)/3 in the block
Vec w();           // (a1 + 2a2)/3
Vec x();           // v1 + v2 + v3
Vec y();           // w + v1 - v2
Vec k(int i);      // k_i = e_i^(1) - e_i^(2), k_{i+6} = e_i^(1) - e_i^(3), i = 1..6
Vec z();           // 2v1 - v2 - v3
}  // namespace lam

// Coordinates on K12tilde (rank 12).
namespace k12 {
Vec z();        // (k1+k4+k7+k10 + 2(k2+k5+k8+k11))/3
Vec z_prime();  // (k1+k4+k7+k10 - k2-k5-k8-k11)/3
// Basis {k1..k10, z', k12} of K12.
std::vector<Vec> match_basis();
}  // namespace k12

// Coordinates on A2(-1) + U(3) + E6 + A2^6 (rank 22), the frame of H^2 of the quotient.
namespace h2y {
constexpr std::size_t rank = 22;
constexpr std::size_t a1 = 0, a2 = 1, u1 = 2, u2 = 3;
std::size_t e(int i);              // i = 1..6
std::size_t m(int which, int j);   // M_which^(j), which = 1,2, j = 1..6
Lattice base();
Vec unit(std::size_t idx);
Vec zj(int j);   // (M1^(j) + 2 M2^(j))/3
Vec mhat();      // sum of zj
Vec b(int i);    // i = 1..4: z1+z2+z3, z1+z2+z4, z2-z3+z4-z5, -z1+z3-z4+z5
// Glue classes a-part/3 + b. n4 uses z1+z2+z5: with z1+z2+z4 the pairing n1.n4 = -4/3.
Vec n(int i);          // i = 1..4
Vec n_literal(int i);  // i = 1..4, with b2 = z1+z2+z4 in n4
Vec b2_glue();         // z1+z2+z5
}  // namespace h2y

// Coordinates on A2^6 alone (rank 12), the base of M_Z3.
namespace mz3 {
std::size_t m(int which, int j);
Vec zj(int j);
Vec mhat();
}  // namespace mz3

}  // namespace k3lat
