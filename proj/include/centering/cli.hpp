#ifndef CENTERING_CLI_HPP
#define CENTERING_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace centering::cli {

/// Exit codes of `run`.
enum Exit : int { kOk = 0, kIoOrSchema = 1, kDomain = 2, kNotConverged = 3 };

struct RunConfig {
  std::string command;  ///< cp, cp-table, opnorm, oracle, mixture, gbeta, nu, bcap, gamma-exp, verify
  std::string p;        ///< exponent text; "inf" allowed
  std::optional<double> alpha, beta, eps;
  double gamma_re = 1.0;
  double gamma_im = 0.0;
  std::optional<int> n, cells, blocks;
  int starts = 64;
  int max_iters = 10'000;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;  ///< empty: stdout
  // inputs
  std::string space, partition = "trivial", matrix, dist, xi, functions;
  std::string suite = "all";
  unsigned workers = 1;
};

/// Validates the command-specific flags, computes, writes the document.
/// Diagnostics go to `err`. Output bytes depend only on cfg (not workers).
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and calls run. Honors CENTERING_LAB_THREADS.
int main(int argc, char** argv);

}  // namespace centering::cli

#endif  // CENTERING_CLI_HPP
