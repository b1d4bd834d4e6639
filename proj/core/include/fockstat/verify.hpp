#pragma once

#include <string>
#include <vector>

namespace fockstat {

enum class VerifyLevel { fast, full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifySummary {
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Self-verification against the matrix oracle and the closed-form anchors.
/// `fast` uses reduced grids; `full` adds the coherent-limit chain and the
/// dense grids. Failures are reported in the summary, never thrown.
VerifySummary verify_suite(VerifyLevel level);

std::string render_summary(const VerifySummary& summary);

}  // namespace fockstat
