#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k3lat/lattice.hpp"

namespace k3lat {

class DiscFormError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Element of a finite abelian group, as coefficients on the generators.
using Elem = std::vector<long>;

// Finite quadratic form on Z/o_1 x ... x Z/o_r. Values of q are kept in [0,2),
// values of b in [0,1).
class FiniteQuadraticForm {
public:
  FiniteQuadraticForm() = default;
  FiniteQuadraticForm(std::vector<long> orders, std::vector<Q> q_gens, Matrix b_gens);

  const std::vector<long>& orders() const { return orders_; }
  std::size_t ngens() const { return orders_.size(); }
  std::uint64_t size() const;
  const Matrix& bmat() const { return b_; }
  const std::vector<Q>& qgens() const { return qg_; }

  Q q(const Elem& x) const;
  Q b(const Elem& x, const Elem& y) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem scale(long n, const Elem& x) const;
  Elem reduce(const Elem& x) const;
  long order_of(const Elem& x) const;
  Elem zero() const { return Elem(orders_.size(), 0); }

  // Mixed-radix enumeration of all elements.
  Elem element(std::uint64_t index) const;
  std::uint64_t index_of(const Elem& x) const;

  FiniteQuadraticForm negated() const;
  FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& o) const;
  bool is_elementary(long p) const;
  bool is_nondegenerate() const;

  // Gram matrix of the induced F_p bilinear form, for p-elementary forms.
  std::vector<std::vector<long>> fp_gram(long p) const;

private:
  std::vector<long> orders_;
  std::vector<Q> qg_;
  Matrix b_;
};

Q mod2(const Q& x);
Q mod1(const Q& x);

// Discriminant group L*/L with its realization inside L (x) Q.
struct DiscriminantGroup {
  Lattice lattice;
  FiniteQuadraticForm form;
  std::vector<Vec> gens;        // dual vectors in lattice coordinates, one per generator
  Matrix v_inverse;             // inverse of the right Smith transform
  std::vector<Z> smith_diag;    // full Smith diagonal of the Gram matrix
  std::vector<std::size_t> nontrivial;  // indices of diagonal entries > 1

  // Class of a dual vector (lattice coordinates) in the group.
  Elem class_of(const Vec& v) const;
  // Dual vector representing an element.
  Vec lift(const Elem& x) const;
};

DiscriminantGroup discriminant_group(const Lattice& l);
FiniteQuadraticForm discriminant_form(const Lattice& l);
FiniteQuadraticForm discriminant_form(const RelativeLattice& l);

// Residue s mod 8 with Gauss sum equal to sqrt(|A|) * exp(2 pi i s / 8).
int milgram_invariant(const FiniteQuadraticForm& f);

struct FqfIsoResult {
  bool isomorphic = false;
  bool decided = false;
  std::string method;
  std::optional<std::vector<Elem>> witness;  // images of the generators of f in g
  nlohmann::json to_json() const;
};

// Isomorphism test. For 3-elementary forms the decision uses (rank, determinant class,
// Milgram residue) and a witness is searched within `budget` nodes. Other forms are
// decided prime by prime by exhaustive generator-image search.
FqfIsoResult fqf_isomorphic(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g,
                            std::uint64_t budget = 2000000);

// Check that the generator images define an isometry f -> g.
bool verify_fqf_witness(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g,
                        const std::vector<Elem>& images);

// Determinant class (1 or -1 as Legendre symbol) of a 3-elementary form.
int det_class_mod3(const FiniteQuadraticForm& f);

// An automorphism of a finite form, given by generator images.
using FormAutomorphism = std::vector<Elem>;

Elem apply_automorphism(const FiniteQuadraticForm& f, const FormAutomorphism& a, const Elem& x);

// Lattice isometry, row convention: basis vector i maps to row i of `matrix`.
struct Isometry {
  std::string lattice;
  Matrix matrix;
  std::string label;
};

bool is_isometry(const Lattice& l, const Matrix& m);
FormAutomorphism induced_automorphism(const DiscriminantGroup& dg, const Matrix& m);

struct OrbitPart {
  Q q;
  std::vector<std::uint64_t> elements;  // element indices, ascending
};

// Orbits of the group generated by `gens` on the nonzero elements, ordered by
// (q value, smallest element index). Throws if a generator does not preserve q.
std::vector<OrbitPart> orbit_partition(const FiniteQuadraticForm& f,
                                       const std::vector<FormAutomorphism>& gens);

// Level sets of q on the nonzero elements, same ordering convention.
std::vector<OrbitPart> level_sets(const FiniteQuadraticForm& f);

struct IsometrySearchConfig {
  std::size_t max_isometries = 64;
  std::uint64_t max_nodes = 5000000;
  // 0: full enumeration; otherwise one isometry for each of the first N images of the
  // first search-basis vector.
  std::size_t first_image_limit = 0;
  std::vector<Matrix> seeds;
  // Prescribed images for leading search-basis vectors (lattice coordinates).
  std::vector<Vec> fixed_images;
  // Optional search basis (rows in lattice coordinates); must be a Z-basis.
  std::vector<Vec> search_basis;
};

struct IsometrySearchResult {
  std::vector<Matrix> isometries;
  bool complete = false;
  std::uint64_t nodes = 0;
};

// Backtracking isometry search on a definite lattice.
IsometrySearchResult isometry_search(const Lattice& l, const IsometrySearchConfig& cfg = {});

// All vectors v != 0 with |v.v| <= bound in a definite lattice, in lexicographic order.
std::vector<Vec> short_vectors(const Lattice& l, const Z& bound);

// Local genus data used to compare indefinite lattices.
struct JordanConstituent {
  int scale_exp;
  int rank;
  int det_legendre;
  bool operator==(const JordanConstituent&) const = default;
};
std::vector<JordanConstituent> odd_jordan_symbol(const Matrix& gram, long p);

// p-primary part of a finite form.
FiniteQuadraticForm primary_part(const FiniteQuadraticForm& f, long p);

struct GenusComparison {
  bool same = false;
  std::string detail;
  nlohmann::json to_json() const;
};

// Local invariants of an even lattice, computed once for repeated comparisons.
struct GenusData {
  std::size_t rank = 0;
  Signature signature;
  Q det;
  bool even = false;
  std::vector<std::pair<long, std::vector<JordanConstituent>>> odd_symbols;
  std::optional<FiniteQuadraticForm> two_primary;
};
GenusData genus_data(const Lattice& l);

// Compare rank, signature, determinant, odd Jordan symbols and the 2-primary
// discriminant forms.
GenusComparison compare_genus(const Lattice& a, const Lattice& b);
GenusComparison compare_genus(const GenusData& a, const GenusData& b);

std::vector<long> prime_divisors(Z n);

}  // namespace k3lat
