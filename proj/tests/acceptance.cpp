// One PASS/FAIL line per acceptance criterion. Exit status 1 if any line fails.

#include <cstdio>
#include <string>

#include "k3lat/verify.hpp"

using namespace k3lat;

namespace {

struct Criterion {
  int number;
  const char* id;
  double time_limit;  // seconds; 0 for none
  const char* claim;
};

const Criterion criteria[] = {
    {1, "lambda-k3-glued", 1.0, "glued K3 lattice even, |det| 1, signature (3,19), index 9"},
    {2, "k12-construction", 1.0, "K12: |det| 3^6, even, negative definite, q values in {0, 2/3, 4/3}"},
    {3, "coinvariant-k12", 0, "coinvariant lattice Gram equals K12 after basis match"},
    {4, "invariant-disc-form", 0, "invariant lattice disc form isomorphic to A2(-1)+U+E6*(3), witness verified"},
    {5, "push-pull", 0, "pi^*pi_* = 1+s+s^2, pi_*pi^* = 3, adjunction"},
    {6, "h2y-reconstruction", 0, "H^2(Y) even unimodular (3,19), M_Z3 complement |det| 3^4 (n4 glue z1+z2+z5)"},
    {7, "family-classification", 10.0, "d,e <= 30: mod-3 existence, all admissible glues genus-identical"},
    {8, "orbits-k12-m", 60.0, "orbit partitions on A_K12 and A_M equal q level sets"},
    {9, "ns-correspondence", 0, "PlainX(d) -> PrimedY(3d), PrimedX(3e) -> PlainY(e), round trip"},
    {10, "divisor-arithmetic", 0, "chi sums and table, all D_i integral, pull-backs, d <= 30"},
    {11, "eigenspace-dimensions", 0, "(1,1,1), (2,1,1), (2,2,1), (3,1,1)"},
    {12, "example-surface", 0, "rank 20, kernel 4, relations, sigma, NS |det| 3, index 3, U Gram"},
    {13, "milgram-catalog", 0, "Gauss-sum residue = signature mod 8 on catalog lattices"},
    {14, "isogeny-tower", 0, "degrees 6*3^k and genus equality at each rung, height 5"},
};

std::string detail(const verify::Check& c) {
  if (c.witness.contains("error")) return "error: " + c.witness["error"].get<std::string>();
  if (c.id == "divisor-arithmetic" && c.status != verify::Status::Pass) {
    std::string s = "chi_ok=" + std::string(c.witness["chi_ok"].get<bool>() ? "1" : "0") +
                    " pullbacks_ok=" + (c.witness["pullbacks_ok"].get<bool>() ? "1" : "0") + " non-integral in:";
    for (const auto& f : c.witness["integrality_failures"]) {
      s += " " + f["y"].get<std::string>() + "(";
      bool first = true;
      for (const auto& b : f["non_integral"]) {
        s += (first ? "" : ",") + b["divisor"].get<std::string>();
        first = false;
      }
      s += ")";
    }
    return s;
  }
  if (c.status == verify::Status::Inconclusive) return "inconclusive";
  return "";
}

}  // namespace

int main() {
  verify::Options opt;
  int failures = 0;
  double total = 0;
  for (const auto& cr : criteria) {
    verify::Check c = verify::run_check(cr.id, opt);
    total += c.elapsed;
    bool in_time = cr.time_limit == 0 || c.elapsed < cr.time_limit;
    bool pass = c.status == verify::Status::Pass && in_time;
    if (!pass) ++failures;
    std::string extra = detail(c);
    if (!in_time) extra += (extra.empty() ? "" : "; ") + std::string("over time limit");
    std::printf("%s [%2d] %-22s %7.3f s%s  %s%s%s\n", pass ? "PASS" : "FAIL", cr.number, cr.id, c.elapsed,
                cr.time_limit > 0 ? (" (< " + std::to_string(static_cast<int>(cr.time_limit)) + " s)").c_str() : "",
                cr.claim, extra.empty() ? "" : " -- ", extra.c_str());
  }
  std::printf("total %.3f s, %d of 14 failed\n", total, failures);
  return failures ? 1 : 0;
}
