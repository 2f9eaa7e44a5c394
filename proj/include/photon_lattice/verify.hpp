#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace photon_lattice {

enum class VerifyLevel { Fast, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Self-test of the engine against its oracles and invariants.
///
/// Fast level (seconds):
///   basis-dimensions       reduced dimensions for all grids up to 8x8
///   channel-counts         escape channel counts and decay weights
///   oracle-hamiltonian     full occupation-space restriction at 3x3
///   oracle-trajectory      200 unitary steps against the full space at 3x3
///   propagator-unitarity   |U^dag U - I| at 9x9
///   block-vs-full          block and full density paths at 5x5, both methods
///   conservation-ledger    in-plane + escaped population stays 1
///   ab-ordering            Method B escapes faster than Method A at 3x3
/// Full level adds the 31x31 closed-system checks (norm, pure vs density
/// paths, central symmetry) and 31x31 propagator unitarity.
///
/// Each finished check is logged to `log` when given.
VerifyReport run_verification(VerifyLevel level, std::ostream* log = nullptr);

}  // namespace photon_lattice
