#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "k3lat/linalg.hpp"

namespace k3lat {

class LatticeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Signature {
  int pos = 0;
  int neg = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
  std::string str() const;
};

// Integral lattice given by a symmetric integer Gram matrix.
class Lattice {
public:
  Lattice() = default;
  Lattice(std::string name, Matrix gram, std::vector<std::string> labels = {},
          bool allow_degenerate = false);

  const std::string& name() const { return name_; }
  const Matrix& gram() const { return gram_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t rank() const { return gram_.rows(); }
  bool degenerate() const { return degenerate_; }

  const Q& det() const { return det_; }
  Signature signature() const;
  bool is_even() const;
  bool is_unimodular() const;
  Q pair(const Vec& a, const Vec& b) const { return bilinear(a, gram_, b); }
  Q norm(const Vec& a) const { return pair(a, a); }

  Lattice renamed(std::string name) const;

private:
  std::string name_;
  Matrix gram_;
  std::vector<std::string> labels_;
  bool degenerate_ = false;
  Q det_ = 1;
};

Lattice direct_sum(const std::vector<Lattice>& parts, std::string name = "");
Lattice rescale(const Lattice& l, long n, std::string name = "");

// Sylvester signature of any symmetric rational matrix.
Signature signature_of(const Matrix& gram);

// Class adjoined to a base lattice, in base coordinates.
struct GlueVector {
  Vec coords;
  std::string label;
  Z denominator() const { return common_denominator(coords); }
};

// Lattice spanned by rational vectors in the coordinates of a reference lattice.
// The basis is kept in canonical row Hermite form.
class RelativeLattice {
public:
  RelativeLattice() = default;
  RelativeLattice(Lattice reference, std::vector<Vec> generators, std::string name = "");

  static RelativeLattice whole(const Lattice& l);

  const Lattice& reference() const { return reference_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::string& name() const { return name_; }
  std::size_t rank() const { return basis_.size(); }

  Matrix basis_matrix() const;
  Matrix gram() const;
  Lattice as_lattice(std::string name = "") const;

  Q pair(const Vec& a, const Vec& b) const { return reference_.pair(a, b); }
  // Integer coordinates of v with respect to the basis, if v belongs to the lattice.
  std::optional<Vec> coords_of(const Vec& v) const;
  bool contains(const Vec& v) const { return coords_of(v).has_value(); }
  bool contains_lattice(const RelativeLattice& other) const;
  // Index [this : sub] for a full-rank sublattice of the same rank.
  Z index_of(const RelativeLattice& sub) const;
  // Index of the reference lattice inside this full-rank lattice.
  Z index_over_reference() const;

  bool same_lattice(const RelativeLattice& other) const { return basis_ == other.basis_; }
  RelativeLattice renamed(std::string name) const;

private:
  Lattice reference_;
  std::vector<Vec> basis_;
  std::string name_;
};

// Lattice generated by the base together with the glue vectors.
// Throws LatticeError naming the offending pair if the result is not even and integral.
RelativeLattice overlattice(const Lattice& base, const std::vector<GlueVector>& glues,
                            std::string name = "");
RelativeLattice overlattice(const RelativeLattice& base, const std::vector<GlueVector>& glues,
                            std::string name = "");

// Primitive closure of the given vectors inside `ambient`.
RelativeLattice saturate_in(const RelativeLattice& ambient, const std::vector<Vec>& vectors,
                            std::string name = "");

// Saturated orthogonal complement of `sub` inside `ambient`.
RelativeLattice orthogonal_complement(const RelativeLattice& ambient, const std::vector<Vec>& sub,
                                      std::string name = "");
RelativeLattice orthogonal_complement(const RelativeLattice& sub, std::string name = "");

bool is_even(const Lattice& l);
bool is_unimodular(const Lattice& l);
Signature signature(const Lattice& l);

nlohmann::json to_json(const Lattice& l);
nlohmann::json to_json(const RelativeLattice& l);
Lattice lattice_from_json(const nlohmann::json& j);
std::string rational_str(const Q& q);
Q parse_rational(const std::string& s);

}  // namespace k3lat
