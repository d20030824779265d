#include "k3lat/lattice.hpp"

#include <sstream>

namespace k3lat {

std::string Signature::str() const {
  std::ostringstream os;
  os << "(" << pos << "," << neg << ")";
  if (zero) os << "+" << zero << "deg";
  return os.str();
}

Lattice::Lattice(std::string name, Matrix gram, std::vector<std::string> labels,
                 bool allow_degenerate)
    : name_(std::move(name)), gram_(std::move(gram)), labels_(std::move(labels)) {
  if (!gram_.is_symmetric()) throw LatticeError("Gram matrix of " + name_ + " is not symmetric");
  if (!gram_.is_integral()) throw LatticeError("Gram matrix of " + name_ + " is not integral");
  if (!labels_.empty() && labels_.size() != gram_.rows())
    throw LatticeError("label count does not match rank for " + name_);
  det_ = gram_.rows() ? k3lat::det(gram_) : Q(1);
  degenerate_ = gram_.rows() > 0 && det_ == 0;
  if (degenerate_ && !allow_degenerate)
    throw LatticeError("degenerate Gram matrix for " + name_);
}

Signature Lattice::signature() const {
  if (degenerate_) throw LatticeError("signature requested for degenerate lattice " + name_);
  return signature_of(gram_);
}

bool Lattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (gram_(i, i).get_num() % 2 != 0) return false;
  return true;
}

bool Lattice::is_unimodular() const { return abs(det()) == 1; }

Lattice Lattice::renamed(std::string name) const {
  Lattice l(*this);
  l.name_ = std::move(name);
  return l;
}

Signature signature_of(const Matrix& gram) {
  if (!gram.is_symmetric()) throw LatticeError("signature of non-symmetric matrix");
  Matrix a(gram);
  const std::size_t n = a.rows();
  Signature s;
  // Symmetric elimination by congruence transformations.
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (sgn(a(i, i)) != 0) {
          p = i;
          break;
        }
      if (p != n) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        for (std::size_t j = 0; j < n; ++j) std::swap(a(j, k), a(j, p));
      } else {
        std::size_t q = n;
        for (std::size_t i = k + 1; i < n; ++i)
          if (sgn(a(k, i)) != 0) {
            q = i;
            break;
          }
        if (q == n) {
          ++s.zero;
          continue;
        }
        // Replace e_k by e_k + e_q: new diagonal entry 2 a(k,q) != 0.
        for (std::size_t j = 0; j < n; ++j) a(k, j) += a(q, j);
        for (std::size_t j = 0; j < n; ++j) a(j, k) += a(j, q);
      }
    }
    const Q piv = a(k, k);
    if (sgn(piv) > 0)
      ++s.pos;
    else
      ++s.neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      Q f = a(i, k) / piv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = k; j < n; ++j) a(j, i) = a(i, j);
    }
  }
  return s;
}

Lattice direct_sum(const std::vector<Lattice>& parts, std::string name) {
  std::size_t n = 0;
  for (const auto& p : parts) n += p.rank();
  Matrix g(n, n);
  std::vector<std::string> labels;
  bool all_labels = true;
  std::size_t off = 0;
  std::string auto_name;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
    off += p.rank();
    if (p.labels().empty()) all_labels = false;
    labels.insert(labels.end(), p.labels().begin(), p.labels().end());
    auto_name += (auto_name.empty() ? "" : "+") + p.name();
  }
  bool degenerate = false;
  for (const auto& p : parts) degenerate = degenerate || p.degenerate();
  return Lattice(name.empty() ? auto_name : std::move(name), g,
                 all_labels ? labels : std::vector<std::string>{}, degenerate);
}

Lattice rescale(const Lattice& l, long n, std::string name) {
  if (n == 0) throw LatticeError("rescaling by zero");
  return Lattice(name.empty() ? l.name() + "(" + std::to_string(n) + ")" : std::move(name),
                 l.gram().scaled(Q(n)), l.labels(), l.degenerate());
}

bool is_even(const Lattice& l) { return l.is_even(); }
bool is_unimodular(const Lattice& l) { return l.is_unimodular(); }
Signature signature(const Lattice& l) { return l.signature(); }

RelativeLattice::RelativeLattice(Lattice reference, std::vector<Vec> generators, std::string name)
    : reference_(std::move(reference)), name_(std::move(name)) {
  for (const auto& g : generators)
    if (g.size() != reference_.rank()) throw LatticeError("generator length mismatch in " + name_);
  basis_ = hermite_basis(generators);
}

RelativeLattice RelativeLattice::whole(const Lattice& l) {
  return RelativeLattice(l, Matrix::identity(l.rank()).row_list(), l.name());
}

Matrix RelativeLattice::basis_matrix() const {
  return Matrix::from_rows(basis_, reference_.rank());
}

Matrix RelativeLattice::gram() const {
  Matrix b = basis_matrix();
  return b * reference_.gram() * b.transpose();
}

Lattice RelativeLattice::as_lattice(std::string name) const {
  Matrix g = gram();
  if (!g.is_integral()) throw LatticeError("lattice " + name_ + " has non-integral Gram matrix");
  return Lattice(name.empty() ? name_ : std::move(name), g, {}, reference_.degenerate());
}

std::optional<Vec> RelativeLattice::coords_of(const Vec& v) const {
  auto c = solve_in_span(basis_, v);
  if (!c || !is_integral(*c)) return std::nullopt;
  // Guard against inconsistent systems solved only in the free variables.
  if (vec_mul(*c, basis_matrix()) != v) return std::nullopt;
  return c;
}

bool RelativeLattice::contains_lattice(const RelativeLattice& other) const {
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

Z RelativeLattice::index_of(const RelativeLattice& sub) const {
  if (sub.rank() != rank()) throw LatticeError("index requires equal ranks");
  Matrix c(rank(), rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto co = coords_of(sub.basis()[i]);
    if (!co) throw LatticeError("index requested for a non-sublattice");
    c.set_row(i, *co);
  }
  Q d = abs(det(c));
  if (d.get_den() != 1) throw LatticeError("non-integral index");
  return d.get_num();
}

Z RelativeLattice::index_over_reference() const {
  if (rank() != reference_.rank()) throw LatticeError("index requires a full-rank lattice");
  Q d = abs(det(basis_matrix()));
  Q idx = 1 / d;
  if (idx.get_den() != 1) throw LatticeError("reference lattice is not contained in " + name_);
  return idx.get_num();
}

RelativeLattice RelativeLattice::renamed(std::string name) const {
  RelativeLattice r(*this);
  r.name_ = std::move(name);
  return r;
}

namespace {

std::string label_of(const std::vector<GlueVector>& glues, std::size_t i) {
  return glues[i].label.empty() ? "glue#" + std::to_string(i) : glues[i].label;
}

void check_glues(const Lattice& ref, const std::vector<Vec>& base_rows,
                 const std::vector<GlueVector>& glues, const std::string& name) {
  for (std::size_t i = 0; i < glues.size(); ++i) {
    const Vec& g = glues[i].coords;
    if (g.size() != ref.rank())
      throw LatticeError(name + ": " + label_of(glues, i) + " has wrong length");
    const Vec gg = vec_mul(g, ref.gram());
    for (std::size_t j = 0; j < base_rows.size(); ++j) {
      Q p = dot(gg, base_rows[j]);
      if (p.get_den() != 1)
        throw LatticeError(name + ": non-integral pairing " + p.get_str() + " between " +
                           label_of(glues, i) + " and base vector " + std::to_string(j));
    }
    for (std::size_t k = 0; k < i; ++k) {
      Q p = dot(gg, glues[k].coords);
      if (p.get_den() != 1)
        throw LatticeError(name + ": non-integral pairing " + p.get_str() + " between " +
                           label_of(glues, i) + " and " + label_of(glues, k));
    }
    Q n = dot(gg, g);
    if (n.get_den() != 1 || n.get_num() % 2 != 0)
      throw LatticeError(name + ": " + label_of(glues, i) + " has odd or non-integral norm " +
                         n.get_str());
  }
}

RelativeLattice finish_overlattice(const Lattice& ref, std::vector<Vec> rows,
                                   const std::vector<GlueVector>& glues, std::string name) {
  check_glues(ref, rows, glues, name);
  for (const auto& g : glues) rows.push_back(g.coords);
  RelativeLattice r(ref, rows, std::move(name));
  Matrix gm = r.gram();
  if (!gm.is_integral()) throw LatticeError(r.name() + ": generated lattice is not integral");
  for (std::size_t i = 0; i < gm.rows(); ++i)
    if (gm(i, i).get_num() % 2 != 0) throw LatticeError(r.name() + ": generated lattice is odd");
  return r;
}

}  // namespace

RelativeLattice overlattice(const Lattice& base, const std::vector<GlueVector>& glues,
                            std::string name) {
  if (name.empty()) name = base.name() + "'";
  if (!base.is_even()) throw LatticeError(name + ": base lattice is odd");
  return finish_overlattice(base, Matrix::identity(base.rank()).row_list(), glues,
                            std::move(name));
}

RelativeLattice overlattice(const RelativeLattice& base, const std::vector<GlueVector>& glues,
                            std::string name) {
  if (name.empty()) name = base.name() + "'";
  return finish_overlattice(base.reference(), base.basis(), glues, std::move(name));
}

RelativeLattice saturate_in(const RelativeLattice& ambient, const std::vector<Vec>& vectors,
                            std::string name) {
  std::vector<Vec> coeffs;
  for (const auto& v : vectors) {
    auto c = solve_in_span(ambient.basis(), v);
    if (!c || vec_mul(*c, ambient.basis_matrix()) != v)
      throw LatticeError("vector outside the ambient space in saturation");
    coeffs.push_back(*c);
  }
  std::vector<Vec> sat = hermite_saturate(coeffs);
  Matrix a = ambient.basis_matrix();
  std::vector<Vec> rows;
  for (const auto& c : sat) rows.push_back(vec_mul(c, a));
  return RelativeLattice(ambient.reference(), rows, std::move(name));
}

RelativeLattice orthogonal_complement(const RelativeLattice& ambient, const std::vector<Vec>& sub,
                                      std::string name) {
  const Matrix a = ambient.basis_matrix();
  if (sub.empty()) return ambient.renamed(std::move(name));
  Matrix s = Matrix::from_rows(sub, ambient.reference().rank());
  Matrix m = a * ambient.reference().gram() * s.transpose();  // n x k
  std::vector<Vec> ker = left_kernel_basis(m);
  std::vector<Vec> rows;
  if (!ker.empty()) {
    for (const auto& c : hermite_saturate(ker)) rows.push_back(vec_mul(c, a));
  }
  return RelativeLattice(ambient.reference(), rows, std::move(name));
}

RelativeLattice orthogonal_complement(const RelativeLattice& sub, std::string name) {
  return orthogonal_complement(RelativeLattice::whole(sub.reference()), sub.basis(),
                               std::move(name));
}

std::string rational_str(const Q& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

Q parse_rational(const std::string& s) {
  Q q;
  if (q.set_str(s, 10) != 0) throw LatticeError("cannot parse rational '" + s + "'");
  q.canonicalize();
  return q;
}

namespace {

nlohmann::json gram_json(const Matrix& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Z& v = g(i, j).get_num();
      if (v.fits_slong_p())
        row.push_back(v.get_si());
      else
        row.push_back(v.get_str());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

nlohmann::json to_json(const Lattice& l) {
  nlohmann::json j;
  j["name"] = l.name();
  j["rank"] = l.rank();
  j["gram"] = gram_json(l.gram());
  if (!l.labels().empty()) j["basis_labels"] = l.labels();
  return j;
}

nlohmann::json to_json(const RelativeLattice& l) {
  nlohmann::json j;
  j["name"] = l.name();
  j["rank"] = l.rank();
  j["gram"] = gram_json(l.gram());
  j["reference"] = l.reference().name();
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : l.basis()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : b) row.push_back(rational_str(x));
    basis.push_back(row);
  }
  j["basis"] = basis;
  return j;
}

Lattice lattice_from_json(const nlohmann::json& j) {
  const auto& rows = j.at("gram");
  std::size_t n = rows.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw LatticeError("Gram matrix in JSON is not square");
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = rows[i][k];
      g(i, k) = e.is_string() ? parse_rational(e.get<std::string>()) : Q(e.get<long>());
    }
  }
  if (j.contains("rank") && j.at("rank").get<std::size_t>() != n)
    throw LatticeError("rank field does not match Gram size");
  std::vector<std::string> labels;
  if (j.contains("basis_labels")) labels = j.at("basis_labels").get<std::vector<std::string>>();
  return Lattice(j.value("name", std::string("unnamed")), g, labels);
}

}  // namespace k3lat
