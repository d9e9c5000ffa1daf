#ifndef HALL_VERIFY_HPP
#define HALL_VERIFY_HPP

// Named verification suites binding the algebra identities to concrete
// fixtures, with machine-readable per-check results.  Deterministic under a
// fixed seed.

#include <optional>

#include "hall/quantumhall.hpp"
#include "hall/twistedalg.hpp"

namespace hall {

struct SuiteOptions {
  std::optional<Quiver> quiver;        // overrides the built-in fixtures
  std::optional<std::string> table_json;  // preloaded table (consistency-checked)
  uint64_t seed = 0;
  int trials = 20;
  bool parallel = true;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

// Build-or-reuse fixture tables (process-wide cache).
const HallTable& fixture_table(const Quiver& q, const HallTableOptions& opt);

Quiver fixture_a2();
Quiver fixture_a3();

}  // namespace hall

#endif
