#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ein {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Statistical and algebraic self-checks behind `verify --suite <name>`.
/// Suites: "lemmas" (cell-map commutation and frequency preservation,
/// index-count concentration, the log-cosine identity, the sum
/// concentration bound), "neutralization" (cancellation identity, relay
/// power compliance), "constants" (closed-form constants vs MC), "all".
std::vector<CheckResult> verify_suite(std::string_view suite,
                                      std::uint64_t seed, int threads = 0);

/// Names accepted by verify_suite.
const std::vector<std::string>& verify_suite_names();

}  // namespace ein
