#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nodal {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;

  bool operator==(const CheckResult&) const = default;
};

struct VerifyOptions {
  std::vector<std::int64_t> m_list{1, 2, 3, 5, 6, 9, 50};
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

/// Quick self-check of the library's identities and inequalities on small shells.
/// Every check is exact or has its tolerance stated in its detail string.
std::vector<CheckResult> run_invariants(const VerifyOptions& options);

}  // namespace nodal
