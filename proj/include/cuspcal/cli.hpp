#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cuspcal::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kSchema = 2, kBudget = 3, kAssertion = 4 };

/// Size limits applied to every job.
struct Budget {
  long long max_q = 5;        // residue field size for tables and varieties
  long long max_qm = 81;      // Q^m for variety points
  int max_precision = 8;      // N
  int max_degree = 4;         // n
};

/// Runs one command line (without the program name). JSON goes to out,
/// diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuspcal::cli
