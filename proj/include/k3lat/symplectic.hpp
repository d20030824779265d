#pragma once

#include <string>
#include <vector>

#include "k3lat/catalog.hpp"
#include "k3lat/discform.hpp"

// The order-3 isometry of the glued K3 lattice, its fixed and coinvariant parts, and the
// push-forward / pull-back maps to the cohomology of the quotient.
//
// All matrices use the row convention: a vector v (row of coordinates) maps to v * M.

namespace k3lat {

class SymplecticError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SigmaAction {
  RelativeLattice domain;
  Matrix matrix;        // on the coordinates of domain.reference()
  Matrix glued_matrix;  // on the canonical basis of domain; integral
};

// Checks Gram preservation and integrality on the glued basis; throws otherwise.
SigmaAction make_action(const RelativeLattice& domain, const Matrix& matrix);
// (a, u, e, f, g) -> (a, u, g, e, f) on LambdaK3_glued.
SigmaAction sigma_action();
SigmaAction identity_action();
Matrix sigma_base_matrix();
Matrix matrix_power(const Matrix& m, int k);

RelativeLattice invariant_sublattice(const SigmaAction& s);
RelativeLattice coinvariant_sublattice(const SigmaAction& s);

struct CoinvariantMatch {
  bool same_lattice = false;       // span{k1..k12, z} equals the coinvariant lattice
  bool z_consistent = false;       // both expressions of z agree in LambdaK3 coordinates
  bool gram_equal = false;         // Gram on {k1..k10, z', k12} equals that of build(K12)
  Matrix gram_coinvariant;
  Matrix gram_k12;
};
CoinvariantMatch match_coinvariant_with_k12(const RelativeLattice& coinvariant);

// k-vector combination (K12tilde coordinates) rewritten in LambdaK3 base coordinates.
Vec k12_to_lambda(const Vec& c);

struct LatticeMap {
  std::string source, target;
  Matrix matrix;
  Vec apply(const Vec& v) const { return vec_mul(v, matrix); }
};

// Pi_* from LambdaK3 base coordinates to H^2(Y) base coordinates. On the A2(-1) block:
// a1 -> a1' + 2 a2', a2 -> a1' - a2', so that a1' = pi_*(y) and a2' = pi_*(y) - pi_*(a2).
LatticeMap push_forward();
// Adjoint of push_forward: <pi^* b, a> = <b, pi_* a>.
LatticeMap pull_back();

// Coefficients of (a1', a2') on (pi_* a1, pi_* a2), and the Gram check against A2(-1).
Matrix a2_base_change();

// Overlattice of A2(-1) + U(3) + E6 + A2^6 by Mhat and n1..n4. With literal = true the
// classes h2y::n_literal are used, which throws on the non-integral pairing.
RelativeLattice build_H2Y(bool literal = false);
// A2(-1) + U(3) + E6 + M_Z3 inside the H^2(Y) frame.
RelativeLattice h2y_base_with_M();
// pi_*(LambdaK3_glued) inside the H^2(Y) frame.
RelativeLattice pushforward_image();

struct GlueFormCheck {
  int index = 0;
  Vec b_form;      // a'/u'/e' part plus b_i
  Vec curve_form;  // pi_* of X classes plus M-curve combination
  Vec difference;
  bool same_class = false;      // difference lies in A2(-1)+U(3)+E6+M_Z3
  bool m_parts_agree = false;   // M-parts agree modulo M_Z3
};
std::vector<GlueFormCheck> compare_glue_forms();

struct PullbackGlueCheck {
  std::string name;
  Vec computed;   // LambdaK3 base coordinates
  Vec expected;   // as listed in the reference table
  bool equal = false;
};
std::vector<PullbackGlueCheck> pullback_glue_table();

}  // namespace k3lat
