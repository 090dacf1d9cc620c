#pragma once

#include <string>
#include <vector>

// Built-in verification suite. Each check exercises one advertised
// numerical guarantee of the library end to end, using independent
// computation routes against each other. The command line selftest runs
// checks 1-7; the acceptance harness additionally runs the statistical
// fringe-recovery check and the process-level determinism checks.

namespace triphase {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // worst deviations, counts, elapsed time
};

CheckResult check_closed_form_vs_construction();  // 1
CheckResult check_phase_oracle_agreement();       // 2
CheckResult check_circuit_closure();              // 3
CheckResult check_geodesic_conditions();          // 4
CheckResult check_dynamical_cancellation();       // 5
CheckResult check_two_level_reduction();          // 6
CheckResult check_decomposition_roundtrip();      // 7
CheckResult check_statistical_recovery();         // 8

// Checks 1-7 in order.
std::vector<CheckResult> run_core_checks();

}  // namespace triphase
