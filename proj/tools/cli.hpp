#pragma once

// Batch experiment driver behind the `bstone` executable.
//
// Exit status: 0 success / canonical, 1 a check failed, 2 non-canonical,
// 3 not isometric, 64 usage error, 65 p = 2 where the theorems exclude it.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bstone/algebra.hpp"

namespace bstone::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kTolEnv = "BSTONE_TOL";

inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitHilbert = 65;

struct ExperimentConfig {
  std::string command;
  std::vector<AlgebraShape> shapes;
  std::vector<double> ps;
  int trials = 20;
  std::uint64_t seed = 1;
  /// Verdict threshold for residuals and norm ratios.
  double tol = 1e-7;
  Tolerance numerics{};
  std::string out;  ///< empty: standard output
  std::string format = "json";
  std::string input;
  bool negative = false;
};

/// "2,3" -> [2,3]. Throws std::invalid_argument.
AlgebraShape parse_shape(const std::string& text);
/// "0.5,1,inf" -> [0.5, 1, inf]. Throws std::invalid_argument.
std::vector<double> parse_exponents(const std::string& text);

/// Parses argv into `config`. Returns an exit status when the process should
/// stop right away (help, or a usage error already reported on `err`).
std::optional<int> parse_args(int argc, const char* const* argv, ExperimentConfig& config,
                              std::ostream& out, std::ostream& err);

/// Runs one command. The report goes to config.out, or to `out` if that is
/// empty; diagnostics go to `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace bstone::cli
