#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rtnq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 1;
inline constexpr int kExitValidationFailure = 2;
inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one CLI invocation; `args` excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ValidateOptions {
  std::size_t mc_draws = 100;
  std::size_t negativity_draws = 200;
  std::size_t teleport_draws = 50;
  std::size_t trajectories = 100000;
  std::uint64_t seed = 12345;
  unsigned threads = 0;
  /// Added to every closed-form Lambda; nonzero only to prove the harness can fail.
  double lambda_offset = 0.0;
};

struct CheckSummary {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::size_t required = 0;

  bool ok() const { return passed >= required; }
};

struct ValidationReport {
  std::string csv;
  std::vector<CheckSummary> summaries;

  bool passed() const;
};

/// Randomized closed-form versus independent-route comparisons:
///   noise_mc          |Lambda - MC| <= 3 standard errors per component, >= 99% of draws
///   negativity        closed form vs eigen-decomposition, 1e-10, all draws
///   teleport_fidelity protocol oracle vs closed form, 1e-10, all draws
///   teleport_average  sphere quadrature of the oracle vs (2 + Re Lambda)/3, 1e-8, all draws
ValidationReport run_validation(const ValidateOptions& options);

}  // namespace rtnq::cli
