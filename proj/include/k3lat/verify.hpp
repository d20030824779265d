#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "k3lat/families.hpp"

// The verification suite: every exact claim checked by one named check with a JSON witness.

namespace k3lat::verify {

enum class Status { Pass, Fail, Inconclusive };
std::string status_str(Status s);

struct CheckInfo {
  std::string id;
  std::string anchor;
};

// Canonical check order. The first 14 entries are the acceptance criteria.
const std::vector<CheckInfo>& check_catalog();
bool is_check_id(const std::string& id);

struct Options {
  long dmax = 30;                      // family range for the degree-dependent checks
  std::vector<Matrix> k12_generators;  // extra isometry seeds, K12tilde coordinates
  std::vector<Matrix> m_generators;    // extra isometry seeds, A2^6 coordinates
  OrbitOptions orbit_budget;           // search limits for the orbit check
  std::vector<std::string> only;       // empty: all checks
};

struct Check {
  std::string id;
  std::string anchor;
  Status status = Status::Fail;
  nlohmann::json witness;
  double elapsed = 0;  // seconds
};

struct Report {
  std::vector<Check> checks;  // canonical order
  bool any(Status s) const;
  // 0 when nothing failed (and, with strict, nothing is inconclusive), 1 otherwise.
  int exit_code(bool strict) const;
  nlohmann::json to_json() const;
};

// Runs one check. Exceptions are caught and reported as a failing check.
Check run_check(const std::string& id, const Options& opt = {});
// Runs the selected checks concurrently; the report keeps the canonical order.
Report run_all(const Options& opt = {});

// Reads {"K12": [matrix, ...], "M_Z3": [matrix, ...]} where a matrix is a list of rows of
// integers or rational strings. Throws std::runtime_error on malformed input.
void load_generators(const std::string& path, Options& opt);

}  // namespace k3lat::verify
