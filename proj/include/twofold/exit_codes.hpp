#pragma once

// Process exit codes of the command-line front end, as functions of reports.

#include <span>

#include "twofold/report.hpp"
#include "twofold/solver.hpp"

namespace twofold {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitSynthesis = 3,
  kExitRefused = 4,
  kExitFail = 5,
  kExitInconclusive = 6,
};

/// 0 all pass, 5 any fail, 6 inconclusive without failures.
inline int check_exit_code(const CheckReport& r) {
  if (r.any_fail()) return kExitFail;
  if (r.any(Verdict::Inconclusive)) return kExitInconclusive;
  return kExitOk;
}

/// 4 when any solve refused, 0 otherwise (flagged solves still return 0).
inline int solve_exit_code(std::span<const SolveReport> reports) {
  for (const auto& r : reports) {
    if (r.refused()) return kExitRefused;
  }
  return kExitOk;
}

}  // namespace twofold
