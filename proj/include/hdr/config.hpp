#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace hdr {

struct InitConfig {
  /// Sample count is ceil(n^samples_exponent).
  double samples_exponent = 2.0 / 3.0;
  /// Number of consecutive sample-to-sample sub-paths per 2-opt window.
  int window_subpaths = 3;
};

struct RepairConfig {
  /// Reference engine name; see make_repair_engine().
  std::string engine = "ils";
  /// Work quota per repair call, in vertex neighborhood scans per sub vertex.
  int budget_per_vertex = 40;
  /// Candidate neighbors per vertex used by the local search.
  int neighbors = 8;
};

/// Hyperparameters of the hierarchical destroy-and-repair solver.
struct SolverConfig {
  int m = 500;                      // edges deleted per destroy
  int k = 10;                       // local optima per hierarchy level
  int l_divisor = 90;               // rounds per local opt: ceil(n_i / l_divisor)
  int direct_solve_threshold = 500; // levels below this size are solved outright
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  std::uint64_t seed = 1;
  bool hierarchy_enabled = true;
  int threads = 1;
  /// Stop after this many consecutive passes without improving the best
  /// tour. A pass is one descent through the hierarchy (or, without
  /// hierarchy, one batch of k local opts).
  int max_stall_epochs = 1;
  /// Hard cap on passes, 0 for none.
  int max_epochs = 0;
  InitConfig init;
  RepairConfig repair;

  /// Throws ContractViolation when a field is out of range.
  void validate() const;
};

}  // namespace hdr
