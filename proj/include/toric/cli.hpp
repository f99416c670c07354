#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace toric::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInvalidInput = 2,
  kBudgetExceeded = 3,
  kInconclusive = 4,
};

inline constexpr const char* kReportSchema = "toric-report/1";

// args excludes the program name. Reads stdin-style input from `in` unless --in is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace toric::cli
