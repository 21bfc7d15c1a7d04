#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace witten::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kDegenerate = 2,
  kVerificationFailure = 3,
};

struct RunConfig {
  std::string command;  // analyze | asymptotics | numeric | compare | paper-example | newton-solve
  std::string potential_path;
  std::string series_path;  // newton-solve input
  std::vector<double> h_list{0.1, 0.07, 0.05, 0.035};
  int N = 512;
  int depth = 2;
  std::optional<double> eps;
  std::optional<double> ratio_tol;  // compare: also fail if |ratio - 1| exceeds this at the smallest h
  std::string format = "json";
  std::string out_path;  // empty: write to the output stream
};

/// Throws witten::Error(InvalidInput) on an inconsistent configuration;
/// sorts h_list into descending order.
void validate(RunConfig& config);

/// Executes one command. Diagnostics go to err, results to out or out_path.
int run(RunConfig config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and runs. Used by the witten executable.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace witten::cli
