#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oblab {

struct PropertyResult {
  std::string name;
  long long samples = 0;
  long long failures = 0;
  double max_violation = 0;  // largest lhs - rhs seen (can be negative)
  bool report_only = false;  // recorded, not asserted
};

// seeded randomized checks of the scalar, matrix and form inequalities the
// pipeline relies on; failures must be zero for every non-report-only entry
std::vector<PropertyResult> run_property_audit(std::uint64_t seed,
                                               long long scalar_samples = 100000,
                                               long long matrix_samples = 1000);

bool audit_passed(const std::vector<PropertyResult>& results);

}  // namespace oblab
