#pragma once

#include "lowdisc/numeric.hpp"
#include "lowdisc/verify.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace lowdisc::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInadmissible = 3,
  kConstructionFailed = 4,
  kVerificationFailed = 5,
};

/// Default output directory when --out is not given.
inline constexpr const char* kOutputDirEnv = "LOWDISC_OUTPUT_DIR";

struct RunConfig {
  std::string sequence = "factorial";
  /// 0 picks a default (200 for construct, nmax for experiment).
  std::uint64_t stages = 0;
  std::optional<Rational> c;
  std::uint64_t nmax = 300;
  std::string out;
  unsigned precision = 60;
  std::uint64_t seed = VerifyOptions{}.seed;
  std::string format;
};

int cmd_fib_rep(std::uint64_t n, std::ostream& out, std::ostream& err);
int cmd_construct(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lowdisc::cli
