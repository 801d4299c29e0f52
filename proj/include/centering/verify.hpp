#ifndef CENTERING_VERIFY_HPP
#define CENTERING_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace centering {

struct VerifyOutcome {
  std::string report;  ///< one line per check, then a summary line
  int passed = 0;
  int failed = 0;
};

/// Names accepted by run_verify besides "all".
const std::vector<std::string>& verify_suites();

/// Runs the invariant suite(s) with a seeded generator. The report depends
/// only on (suite, seed, starts), never on the worker count.
/// std::invalid_argument for an unknown suite.
VerifyOutcome run_verify(const std::string& suite, std::uint64_t seed, int starts = 64,
                         unsigned workers = 1);

}  // namespace centering

#endif  // CENTERING_VERIFY_HPP
