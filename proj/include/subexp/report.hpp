#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "subexp/scenario.hpp"

namespace subexp {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  std::vector<std::string> select_types;  // empty selects every check
  std::optional<std::string> csv_dir;
  std::optional<std::uint64_t> seed;
  bool include_timing = true;
};

struct RunResult {
  std::string report_json;  // pretty-printed document
  int exit_code = 0;        // 0 clean, 1 input error, 2 proven-relation trap
  std::size_t checks_run = 0;
  std::size_t violations = 0;  // arrow/equivalence traps
  std::size_t errors = 0;      // per-check input/precondition errors
};

RunResult run_report(const Scenario& scenario, const RunOptions& options);

}  // namespace subexp
