#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include "k3lat/example_surface.hpp"
#include "k3lat/families.hpp"
#include "k3lat/verify.hpp"

using namespace k3lat;
using nlohmann::json;

namespace {

// Bad arguments detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_str(x));
  return a;
}

json form_json(const FiniteQuadraticForm& f) {
  json b = json::array();
  for (std::size_t i = 0; i < f.ngens(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < f.ngens(); ++j) row.push_back(rational_str(f.bmat()(i, j)));
    b.push_back(row);
  }
  return {{"orders", f.orders()}, {"q", vec_json(f.qgens())}, {"b", b}, {"order", f.size()},
          {"milgram", milgram_invariant(f)}};
}

std::string orders_str(const FiniteQuadraticForm& f) {
  if (f.ngens() == 0) return "trivial";
  std::ostringstream os;
  for (std::size_t i = 0; i < f.ngens(); ++i) os << (i ? " x " : "") << "Z/" << f.orders()[i];
  return os.str();
}

NamedLattice lookup(const std::string& name, long param) {
  try {
    return build(name, param);
  } catch (const CatalogError& e) {
    throw UsageError(e.what());
  }
}

NSDescriptor descriptor(Side side, const std::string& variant, long degree) {
  NSDescriptor d;
  try {
    d = {side, parse_variant(variant), degree};
    validate(d);
  } catch (const FamilyError& e) {
    throw UsageError(e.what());
  }
  return d;
}

Side side_arg(const std::string& s) {
  try {
    return parse_side(s);
  } catch (const FamilyError& e) {
    throw UsageError(e.what());
  }
}

std::string inline_str(const Matrix& m) {
  std::string s = m.str();
  s.erase(std::remove(s.begin(), s.end(), '\n'), s.end());
  s.erase(std::unique(s.begin(), s.end(), [](char a, char b) { return a == ' ' && b == ' '; }), s.end());
  return s;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// --- verify-all ---------------------------------------------------------------------

struct VerifyArgs {
  std::string json_path;
  std::vector<std::string> only;
  bool strict = false;
  bool no_timing = false;
  bool list = false;
  long dmax = 30;
  std::string gens;
};

int cmd_verify_all(const VerifyArgs& a) {
  if (a.list) {
    for (const auto& c : verify::check_catalog()) std::cout << std::left << std::setw(24) << c.id << c.anchor << "\n";
    return 0;
  }
  verify::Options opt;
  opt.dmax = a.dmax;
  opt.only = a.only;
  for (const auto& id : a.only)
    if (!verify::is_check_id(id)) throw UsageError("unknown check id: " + id);
  if (a.dmax < 1) throw UsageError("--dmax must be at least 1");
  if (!a.gens.empty()) {
    try {
      verify::load_generators(a.gens, opt);
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  }
  verify::Report r = verify::run_all(opt);
  if (a.no_timing)
    for (auto& c : r.checks) c.elapsed = 0;
  for (const auto& c : r.checks) {
    std::string st = verify::status_str(c.status);
    for (auto& ch : st) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    std::cout << std::left << std::setw(13) << st << std::setw(24) << c.id << std::fixed << std::setprecision(3)
              << c.elapsed << " s  " << c.anchor << "\n";
  }
  if (!a.json_path.empty()) {
    std::ofstream out(a.json_path);
    if (!out) throw std::runtime_error("cannot write " + a.json_path);
    out << r.to_json().dump(2) << "\n";
  }
  return r.exit_code(a.strict);
}

// --- catalog / disc -------------------------------------------------------------------

int cmd_catalog_list(bool as_json) {
  if (as_json) {
    print_json(catalog_names());
    return 0;
  }
  for (const auto& n : catalog_names()) std::cout << n << "\n";
  return 0;
}

int cmd_catalog_show(const std::string& name, long param, bool as_json) {
  NamedLattice nl = lookup(name, param);
  Lattice l = nl.gram_lattice();
  if (as_json) {
    json j = to_json(l);
    j["det"] = rational_str(l.det());
    j["signature"] = {l.signature().pos, l.signature().neg};
    j["even"] = l.is_even();
    print_json(j);
    return 0;
  }
  std::cout << l.name() << ": rank " << l.rank() << ", det " << l.det() << ", signature " << l.signature().str()
            << ", " << (l.is_even() ? "even" : "odd") << "\n"
            << l.gram().str() << "\n";
  return 0;
}

int cmd_disc(const std::string& name, long param, bool as_json) {
  Lattice l = lookup(name, param).gram_lattice();
  FiniteQuadraticForm f = discriminant_form(l);
  if (as_json) {
    json j = form_json(f);
    j["lattice"] = l.name();
    print_json(j);
    return 0;
  }
  std::cout << l.name() << ": A = " << orders_str(f) << " (order " << f.size() << "), Milgram residue "
            << milgram_invariant(f) << ", signature " << l.signature().str() << "\n";
  for (std::size_t i = 0; i < f.ngens(); ++i) {
    std::cout << "  q(g" << i + 1 << ") = " << rational_str(f.qgens()[i]) << "   b(g" << i + 1 << ", -) =";
    for (std::size_t j = 0; j < f.ngens(); ++j) std::cout << " " << rational_str(f.bmat()(i, j));
    std::cout << "\n";
  }
  return 0;
}

// --- families -------------------------------------------------------------------------

int cmd_classify(const std::string& side_s, long degree, bool enumerate, bool as_json) {
  Side side = side_arg(side_s);
  if (degree < 1) throw UsageError("--degree must be positive");
  auto c = classify_overlattice(side, degree);
  std::optional<AdmissibleGlueReport> rep;
  if (c && enumerate) rep = enumerate_admissible_glues(side, degree);
  if (as_json) {
    json j = {{"side", side_str(side)}, {"degree", degree}, {"exists", c.has_value()}};
    if (c) {
      j["g"] = c->g_label;
      j["g_coords"] = vec_json(c->g);
      j["q(g/3)"] = rational_str(c->q_g3);
      j["summands_primitive"] = c->summands_primitive;
      j["lattice"] = to_json(c->lattice);
    }
    if (rep) {
      j["admissible"] = {{"candidates", rep->candidates},
                         {"survivors", rep->survivors.size()},
                         {"all_genus_identical", rep->all_genus_match},
                         {"q_values", vec_json(rep->q_values)}};
    }
    print_json(j);
    return 0;
  }
  std::string pol = side == Side::X ? "L" : "H";
  if (!c) {
    std::cout << "no index-3 overlattice of <" << 2 * degree << "> + " << (side == Side::X ? "K12" : "M_Z3")
              << " with primitive summands (degree not divisible by 3)\n";
    return 0;
  }
  Lattice l = c->lattice.as_lattice();
  std::cout << "g = " << c->g_label << "\n"
            << "glue (" << pol << " + g)/3, q(g/3) = " << rational_str(c->q_g3) << "\n"
            << "overlattice: det " << l.det() << ", signature " << l.signature().str() << ", summands primitive: "
            << (c->summands_primitive ? "yes" : "no") << "\n";
  if (rep)
    std::cout << "admissible glues: " << rep->survivors.size() << " of " << rep->candidates
              << ", all genus-identical: " << (rep->all_genus_match ? "yes" : "no") << "\n";
  return 0;
}

int cmd_quotient_ns(const std::string& side_s, long d, const std::string& variant, bool as_json) {
  NSDescriptor x = descriptor(side_arg(side_s), variant, d);
  QuotientResult q = x.side == Side::X ? ns_of_quotient(x) : ns_of_quotient_inverse(x);
  std::string pol = q.target.side == Side::X ? "L" : "H";
  if (as_json) {
    print_json({{"source", x.to_json()},
                {"target", q.target.to_json()},
                {"expected", q.expected.to_json()},
                {"polarization", vec_json(q.polarization)},
                {"polarization_square", rational_str(q.polarization_square)},
                {"genus_matches", q.genus_matches},
                {"genus_detail", q.genus_detail},
                {"ns", to_json(q.ns)}});
    return q.matches() ? 0 : 1;
  }
  std::cout << x.str() << " -> " << q.target.str() << ", " << pol << "^2=" << rational_str(q.polarization_square)
            << "\n"
            << "expected " << q.expected.str() << ", genus " << (q.genus_matches ? "matches" : "differs") << "\n";
  return q.matches() ? 0 : 1;
}

int cmd_tower(long d, int height, bool as_json) {
  if (d < 1 || height < 1) throw UsageError("--d and --height must be positive");
  auto rungs = isogeny_tower(d, height);
  bool ok = true;
  json rows = json::array();
  for (const auto& r : rungs) {
    ok = ok && r.genus_equal && r.step_ok;
    rows.push_back({{"k", r.k}, {"degree2", r.degree2}, {"as_x", r.as_x.str()}, {"as_y", r.as_y.str()},
                    {"genus_equal", r.genus_equal}, {"step_ok", r.step_ok}});
  }
  if (as_json) {
    print_json({{"d", d}, {"height", height}, {"rungs", rows}});
    return ok ? 0 : 1;
  }
  for (const auto& r : rungs)
    std::cout << r.degree2 << "  " << r.as_x.str() << " ~ " << r.as_y.str() << "  genus "
              << (r.genus_equal ? "equal" : "differs") << (r.step_ok ? "" : "  (step mismatch)") << "\n";
  return ok ? 0 : 1;
}

int cmd_orbits(const std::string& lattice, const std::string& gens, bool no_search, bool as_json) {
  if (lattice != "K12" && lattice != "M_Z3") throw UsageError("--lattice must be K12 or M_Z3");
  verify::Options vo;
  if (!gens.empty()) {
    try {
      verify::load_generators(gens, vo);
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  }
  OrbitOptions opt;
  opt.use_search = !no_search;
  opt.extra_generators = lattice == "K12" ? vo.k12_generators : vo.m_generators;
  OrbitCheck c = lattice == "K12" ? orbit_check_K12(opt) : orbit_check_M(opt);
  if (as_json) {
    json parts = json::array();
    for (const auto& p : c.orbits) parts.push_back({{"q", rational_str(p.q)}, {"size", p.elements.size()}});
    print_json({{"lattice", c.lattice}, {"group_order", c.group_order}, {"generators", c.generators},
                {"searched", c.searched}, {"orbits", parts}, {"equals_level_sets", c.equal}});
    return 0;
  }
  std::cout << c.lattice << ": |A| = " << c.group_order << ", " << c.generators << " generators (" << c.searched
            << " from search)\n";
  for (const auto& level : c.levels) {
    std::map<std::size_t, int> sizes;
    int count = 0;
    for (const auto& p : c.orbits)
      if (p.q == level.q) {
        ++sizes[p.elements.size()];
        ++count;
      }
    std::cout << "  q = " << rational_str(level.q) << ": level set " << level.elements.size() << ", " << count
              << (count == 1 ? " orbit" : " orbits") << " (sizes";
    for (const auto& [size, n] : sizes) std::cout << " " << size << "x" << n;
    std::cout << ")\n";
  }
  std::cout << "orbits " << (c.equal ? "equal" : "refine") << " the level sets of q\n";
  return 0;
}

int cmd_surface(bool as_json) {
  auto g = surface::symbol_gram_report();
  auto rel = surface::verify_relations();
  auto s = surface::verify_sigma_permutation();
  auto ns = surface::reconstruct_NS();
  bool rel_ok = true;
  for (const auto& r : rel) rel_ok = rel_ok && r.in_kernel;
  bool ok = g.rank == 20 && g.kernel_dim == 4 && rel_ok && s.order_three && s.gram_preserved && s.blocks_cycled &&
            ns.ok();
  if (as_json) {
    json rels = json::array();
    for (const auto& r : rel) rels.push_back({{"relation", r.name}, {"in_kernel", r.in_kernel}});
    print_json({{"rank", g.rank}, {"kernel_dim", g.kernel_dim}, {"relations", rels},
                {"sigma_preserves_gram", s.gram_preserved}, {"ns_det", rational_str(ns.det)},
                {"ns_index", ns.index.get_str()}, {"ok", ok}});
    return ok ? 0 : 1;
  }
  std::cout << "symbol Gram: rank " << g.rank << ", kernel " << g.kernel_dim << "\n";
  for (const auto& r : rel) std::cout << "  " << (r.in_kernel ? "ok   " : "FAIL ") << r.name << "\n";
  std::cout << "translation by T1: order 3 " << s.order_three << ", Gram preserved " << s.gram_preserved
            << ", E6 blocks cycled " << s.blocks_cycled << "\n"
            << "NS: det " << ns.det << ", index over U+E6^3 " << ns.index << ", {C2^(3),D} Gram " << inline_str(ns.u_gram)
            << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice computations for K3 surfaces with an order-3 symplectic automorphism"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify-all", "Run the verification suite");
  verify_cmd->add_option("--json", va.json_path, "Write the JSON report to this path");
  verify_cmd->add_option("--only", va.only, "Run only these check ids");
  verify_cmd->add_flag("--strict", va.strict, "Treat inconclusive checks as failures");
  verify_cmd->add_option("--dmax", va.dmax, "Largest degree for the family checks");
  verify_cmd->add_option("--gens", va.gens, "JSON file with extra isometry seeds");
  verify_cmd->add_flag("--no-timing", va.no_timing, "Report elapsed times as 0");
  verify_cmd->add_flag("--list", va.list, "List check ids and exit");

  bool as_json = false;
  std::string name;
  long param = 0;
  auto* catalog_cmd = app.add_subcommand("catalog", "Catalog lattices");
  catalog_cmd->require_subcommand(1);
  auto* cat_list = catalog_cmd->add_subcommand("list", "List lattice names");
  cat_list->add_flag("--json", as_json);
  auto* cat_show = catalog_cmd->add_subcommand("show", "Show a lattice");
  cat_show->add_option("name", name, "Lattice name")->required();
  cat_show->add_option("--param", param, "n for A_n, d for <2d>");
  cat_show->add_flag("--json", as_json);

  auto* disc_cmd = app.add_subcommand("disc", "Discriminant form of a catalog lattice");
  disc_cmd->add_option("name", name, "Lattice name")->required();
  disc_cmd->add_option("--param", param, "n for A_n, d for <2d>");
  disc_cmd->add_flag("--json", as_json);

  std::string side = "X", variant = "plain";
  long degree = 0;
  bool enumerate = false;
  auto* classify_cmd = app.add_subcommand("classify", "Index-3 overlattice of <2d> + K12 or <2e> + M_Z3");
  classify_cmd->add_option("--side", side, "X or Y")->required();
  classify_cmd->add_option("--degree", degree, "d with L^2 = 2d")->required();
  classify_cmd->add_flag("--enumerate", enumerate, "Also check every admissible glue");
  classify_cmd->add_flag("--json", as_json);

  auto* quotient_cmd = app.add_subcommand("quotient-ns", "Neron-Severi lattice on the other side of the quotient");
  quotient_cmd->add_option("--d", degree, "Degree")->required();
  quotient_cmd->add_option("--variant", variant, "plain or primed")->required();
  quotient_cmd->add_option("--side", side, "Side of the input lattice (X: quotient, Y: cover)");
  quotient_cmd->add_flag("--json", as_json);

  int height = 3;
  auto* tower_cmd = app.add_subcommand("tower", "Isogeny tower starting at degree d");
  tower_cmd->add_option("--d", degree, "Starting degree")->required();
  tower_cmd->add_option("--height", height, "Number of rungs");
  tower_cmd->add_flag("--json", as_json);

  std::string orbit_lattice, gens_file;
  bool no_search = false;
  auto* orbits_cmd = app.add_subcommand("orbits", "Orbits of isometries on a discriminant group");
  orbits_cmd->add_option("--lattice", orbit_lattice, "K12 or M_Z3")->required();
  orbits_cmd->add_option("--gens", gens_file, "JSON file with extra isometry seeds");
  orbits_cmd->add_flag("--no-search", no_search, "Use only built-in and supplied generators");
  orbits_cmd->add_flag("--json", as_json);

  auto* surface_cmd = app.add_subcommand("example-surface", "Elliptic K3 with three IV* fibers");
  surface_cmd->require_subcommand(1);
  auto* surface_verify = surface_cmd->add_subcommand("verify", "Check intersection numbers and NS");
  surface_verify->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify_cmd) return cmd_verify_all(va);
    if (*cat_list) return cmd_catalog_list(as_json);
    if (*cat_show) return cmd_catalog_show(name, param, as_json);
    if (*disc_cmd) return cmd_disc(name, param, as_json);
    if (*classify_cmd) return cmd_classify(side, degree, enumerate, as_json);
    if (*quotient_cmd) return cmd_quotient_ns(side, degree, variant, as_json);
    if (*tower_cmd) return cmd_tower(degree, height, as_json);
    if (*orbits_cmd) return cmd_orbits(orbit_lattice, gens_file, no_search, as_json);
    if (*surface_verify) return cmd_surface(as_json);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
