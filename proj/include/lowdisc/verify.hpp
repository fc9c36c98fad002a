#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lowdisc {

struct VerifyOptions {
  std::uint64_t seed = 20130101;
  /// Corrupts one rewritten digit string so the rewrite-safety suite must fail.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs every invariant suite in order; `progress` (if set) sees each result
/// as soon as it is available.
std::vector<SuiteResult> run_verification(
    const VerifyOptions& options, const std::function<void(const SuiteResult&)>& progress = {});

}  // namespace lowdisc
