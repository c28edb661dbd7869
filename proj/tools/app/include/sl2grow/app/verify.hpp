#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sl2grow::app {

struct CheckOutcome {
  int number = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  /// Deterministic findings, one per line. Timings live in `seconds`.
  std::vector<std::string> details;
  double seconds = 0;
};

struct VerifyOptions {
  /// Run the exhaustive p = 5 search (about ten seconds single-threaded).
  bool include_search = true;
  /// Replace the 1000-sample swap check with the full cross product.
  bool exhaustive_swap = false;
  unsigned workers = 1;
  /// Restrict to these check numbers; empty runs all.
  std::vector<int> only;
  std::function<void(const CheckOutcome&)> on_result;
};

struct CheckInfo {
  int number;
  const char* name;
  const char* summary;
};

const std::vector<CheckInfo>& check_catalog();

/// Runs the reproduction checks in order.
std::vector<CheckOutcome> run_checks(const VerifyOptions& opts);

}  // namespace sl2grow::app
