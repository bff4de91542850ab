#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coarse/infinity.hpp"

namespace coarse::cli {

/// Everything a run depends on. Two runs with equal configs write
/// byte-identical outputs and manifests.
struct RunConfig {
  std::string command;  ///< build | spectrum | embed | certify | scan | warp
  std::string space;    ///< FiniteMetricSpace or BlockSpace JSON
  std::vector<std::string> graphs;  ///< edge-list files
  std::string filtration;
  std::string net;
  std::optional<double> R;
  std::string schedule;  ///< "R1,R2,..." or "r1:R1,r2:R2,..."
  std::string out = "out";
  std::uint64_t seed = 1;
  std::string exclusion_rule;  ///< injectivity | none | prefix:k | table:R=k,...
  int p = 2;
  std::optional<double> c;      ///< spectral-gap threshold for scans
  std::optional<double> c_max;  ///< certificate bound for searches
  std::size_t max_elements = 100000;
  int samples = 200;  ///< random Lipschitz maps drawn when validating
};

enum ExitCode : int { kSuccess = 0, kInputError = 1, kSolverMarginal = 2 };

/// Entries "R" (r taken equal to R) or "r:R", comma separated.
std::vector<ScheduleEntry> parse_schedule(const std::string& text);

/// `radii` feeds the injectivity rule and may be empty for the others.
ExclusionRule parse_exclusion_rule(const std::string& text, const std::vector<InjectivityRadius>& radii);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(const std::string& bytes);

/// Executes the command, writing outputs and manifest.json under
/// config.out. Diagnostics go to `log`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& log);

}  // namespace coarse::cli
