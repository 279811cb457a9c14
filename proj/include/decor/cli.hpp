#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace decor::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kInputError = 2 };

struct JobConfig {
  std::string command;  // decorate | gamma | spectrum | sample-gamma | verify
  std::string input;
  std::string decoration;
  std::string preset;
  std::optional<std::pair<double, double>> range;
  double step = 0.0;
  std::uint64_t seed = 1;
  std::size_t cases = 0;
  std::string output;
  std::optional<double> tol_eig;
  std::optional<double> tol_match;
};

// Each command writes its document to `out` and returns an exit code.
int run_decorate(const JobConfig& cfg, std::ostream& out);
int run_gamma(const JobConfig& cfg, std::ostream& out);
int run_spectrum(const JobConfig& cfg, std::ostream& out);
int run_sample_gamma(const JobConfig& cfg, std::ostream& out);
int run_verify(const JobConfig& cfg, std::ostream& out);

/// Parses `args` (without the program name), dispatches, and maps errors to
/// exit codes. Output goes to --output when given, else to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace decor::cli
