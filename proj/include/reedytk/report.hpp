#pragma once

// Shared shape for structured law checking: every validator returns the
// full list of violations, each tagged with the law it breaks plus the
// witnesses involved.

#include <string>
#include <vector>

namespace reedytk {

struct LawViolation {
  std::string law;                     // e.g. "missing composite"
  std::vector<std::string> witnesses;  // ids involved
};

struct ValidationReport {
  std::vector<LawViolation> violations;
  bool ok() const { return violations.empty(); }
};

}  // namespace reedytk
