#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace wzs::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kCapExceeded = 2, kAcceptanceFailed = 3 };

/// Shared settings for every command. Defaults < --config file < flags.
struct RunConfig {
  std::string group = "3";
  std::string weights = "pm";
  std::size_t order_cap = 64;
  std::size_t aut_cap = 4096;
  int length_bound = 12;
  int omega_cap = 8;
  long long max_n = 1000;
  long long lengths_max_n = 200;
  /// text | json | csv; empty means the command's default.
  std::string format;
};

/// Parses a JSON object of RunConfig keys. Unknown keys, non-positive caps and
/// malformed JSON raise wzs::ParseError with a 1-based line and column.
RunConfig parse_config(std::string_view json_text, RunConfig base = {});

/// Runs one command line (args exclude the program name). Output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes one PASS/FAIL line per acceptance criterion; returns the failure count.
int run_acceptance(std::ostream& out);

}  // namespace wzs::cli
