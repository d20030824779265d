#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3lat/symplectic.hpp"

// Neron-Severi lattices of rank 13 on both sides of the order-3 quotient, their
// embeddings, the divisors D1, D2, D3 and the isogeny tower.
//
// Frames:
//   X side: (L, k1..k12), reference <2d> + K12tilde.
//   Y side: (H, M1^(1), M2^(1), ..., M1^(6), M2^(6)), reference <2e> + A2^6.

namespace k3lat {

class FamilyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Side { X, Y };
enum class Variant { Plain, Primed };

struct NSDescriptor {
  Side side = Side::X;
  Variant variant = Variant::Plain;
  long degree = 1;  // d with L^2 = 2d, or e with H^2 = 2e
  bool operator==(const NSDescriptor&) const = default;
  std::string str() const;  // e.g. PlainX(1), PrimedY(3)
  nlohmann::json to_json() const;
};

// Throws FamilyError for degree < 1 or a primed descriptor with degree not divisible by 3.
void validate(const NSDescriptor& d);

std::string side_str(Side s);
std::string variant_str(Variant v);
Variant parse_variant(const std::string& s);
Side parse_side(const std::string& s);

// Frame lattices.
Lattice x_frame(long d);  // <2d> + K12tilde
Lattice y_frame(long e);  // <2e> + A2^6
RelativeLattice plain_x_lattice(long d);  // <2d> + K12
RelativeLattice plain_y_lattice(long e);  // <2e> + M_Z3
Vec y_frame_zj(int j);

struct OverlatticeClass {
  Side side = Side::X;
  long degree = 0;
  Vec g;                // frame coordinates (L/H coefficient 0)
  std::string g_label;
  Q q_g3;               // q(g/3) in [0, 2)
  RelativeLattice lattice;
  bool summands_primitive = false;
};

std::optional<OverlatticeClass> classify_overlattice_X(long d);
std::optional<OverlatticeClass> classify_overlattice_Y(long e);
std::optional<OverlatticeClass> classify_overlattice(Side side, long degree);

struct AdmissibleGlue {
  Vec g3;    // representative of g/3 in frame coordinates
  Q q_g3;
  bool genus_matches = false;  // overlattice has the genus of the classified one
};

struct AdmissibleGlueReport {
  Side side = Side::X;
  long degree = 0;
  std::size_t candidates = 0;  // nonzero classes examined
  std::vector<AdmissibleGlue> survivors;
  bool all_genus_match = true;
  std::vector<Q> q_values;     // distinct q(g/3) among survivors
};

// All (L+g)/3 with g/3 running over the discriminant group, kept if the extension is even
// and integral with both summands primitive; each survivor is compared (genus) with the
// classified overlattice.
AdmissibleGlueReport enumerate_admissible_glues(Side side, long degree, bool compare = true);

// --- Embeddings in the K3 lattice and the quotient map ---------------------------------

struct EmbeddedNS {
  NSDescriptor desc;
  Vec polarization;          // j(L), j~(L), h(H) or h~(H) in its frame coordinates
  long k = 0;                // the integer k of the embedding table
  std::string g_label;       // the E6 vector used (primed X, plain Y)
  RelativeLattice generated; // polarization + K12 (or M_Z3) as given
  RelativeLattice closure;   // primitive closure in LambdaK3_glued / H^2(Y)
  Z index = 1;               // [closure : generated]
};

// j / j~ into LambdaK3_glued (lam frame).
EmbeddedNS embed_NSX(long d, Variant v);
// h / h~ into H^2(Y) (h2y frame).
EmbeddedNS embed_NSY(long e, Variant v);

struct QuotientResult {
  NSDescriptor source;
  NSDescriptor target;
  NSDescriptor expected;
  RelativeLattice ns;           // constructed NS in the target K3 frame
  Vec polarization;             // generator of the complement of M_Z3 (or K12)
  Q polarization_square;
  bool genus_matches = false;   // ns has the genus of the expected shape
  std::string genus_detail;
  bool matches() const { return target == expected && genus_matches; }
};

// X side -> Y side by pushing forward and saturating in H^2(Y).
QuotientResult ns_of_quotient(const NSDescriptor& x);
// Y side -> X side by pulling back, adding K12 and saturating in LambdaK3.
QuotientResult ns_of_quotient_inverse(const NSDescriptor& y);
NSDescriptor expected_quotient(const NSDescriptor& x);
NSDescriptor expected_cover(const NSDescriptor& y);
// Lattice of the given shape in its abstract frame (<2n> + K12 / M_Z3 or the overlattice).
Lattice shape_lattice(const NSDescriptor& d);

// --- Divisors -------------------------------------------------------------------------

struct DivisorReport {
  std::string label;      // D1, D2, D3
  Vec coords;             // Y frame coordinates as printed
  Q square;
  Q chi;
  bool integral_literal = false;  // in the overlattice with glue (H+g)/3
  bool integral_swapped = false;  // in the overlattice with glue (H-g)/3 (M1 <-> M2 relabel)
  bool integral = false;          // in the orientation selected for the triple
  std::optional<Vec> nearest;     // nearest lattice class modulo M_Z3 when not integral
};

struct DivisorTriple {
  NSDescriptor desc;              // Y side
  std::string orientation;        // "literal", "swapped" or "n/a" (plain)
  std::vector<DivisorReport> divisors;
  bool all_integral() const;
};

DivisorTriple divisors_Di(const NSDescriptor& y);
Q chi(const Q& square);  // 2 + D^2/2
std::string divisor_str(const Vec& coords);

// Expected (chi(D1), chi(D2), chi(D3)) from the Riemann-Roch case table, for an X-side
// descriptor.
std::vector<Q> expected_chi(const NSDescriptor& x);

struct EigenspaceResult {
  NSDescriptor x;
  NSDescriptor y;
  std::vector<Q> dims;    // chi(D1), chi(D2), chi(D3)
  Q sum;
  bool sum_ok = false;    // sum == d + 2
  bool table_ok = false;  // matches expected_chi
};
EigenspaceResult eigenspace_dimensions(long d, Variant v);

struct PullbackReport {
  NSDescriptor y;
  std::string label;
  Vec pulled;      // LambdaK3 base coordinates
  Vec expected;
  bool equal = false;
};
// pi^* of the embedded D_i and of the polarization, compared with j(L), j~(L), 3 j(L).
std::vector<PullbackReport> pullback_Di(const NSDescriptor& y);

// --- Tower ----------------------------------------------------------------------------

struct TowerRung {
  int k = 0;
  long m = 0;           // 3^k d
  long degree2 = 0;     // 6m, the square of the polarization
  NSDescriptor as_x;    // PrimedX(3m)
  NSDescriptor as_y;    // PlainY(3m)
  bool genus_equal = false;  // (<6m> + K12)' and <6m> + M_Z3
  std::string genus_detail;
  bool step_ok = true;       // inverse quotient of as_y is the next rung's as_x
};
std::vector<TowerRung> isogeny_tower(long d, int height);

// --- Orbits on discriminant groups -----------------------------------------------------

struct OrbitCheck {
  std::string lattice;
  std::uint64_t group_order = 0;
  std::size_t generators = 0;
  std::size_t searched = 0;
  std::vector<OrbitPart> orbits;
  std::vector<OrbitPart> levels;
  bool equal = false;  // orbit partition equals the level-set partition
};

// Isometry matrices of K12 in K12tilde coordinates (row convention).
Matrix k12_sigma();
Matrix k12_phi();
// Isometries of M_Z3 in A2^6 coordinates: block transposition (j, j+1) and global M1<->M2.
Matrix mz3_block_swap(int j);
Matrix mz3_orientation_swap();

struct OrbitOptions {
  std::size_t first_image_limit = 30;
  std::uint64_t max_nodes = 20000000;
  std::vector<Matrix> extra_generators;  // frame coordinates (k or M)
  bool use_builtin = true;
  bool use_search = true;
};
OrbitCheck orbit_check_K12(const OrbitOptions& opt = {});
OrbitCheck orbit_check_M(const OrbitOptions& opt = {});

}  // namespace k3lat
