#ifndef CCORR_CLI_HPP
#define CCORR_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ccorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

inline constexpr const char* kToolVersion = "0.1.0";

/// Entry point shared by the `ccorr` binary and the tests. `args` excludes
/// the program name.
///
///   identify <config.json> --out <dir> [--seed N] [--threads N]
///   correntropy <data.csv> --sigma <s> --mode <real|complex>
///   batch-solve <data.csv> --sigma <s> --out <file.json> [--reg-delta d] [--max-iter n] [--tol t]
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ccorr::cli

#endif // CCORR_CLI_HPP
