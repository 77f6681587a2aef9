#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcmri::cli {

/// Exit codes of `check`; every other command returns 0 or kError.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kUnacceptable = 2;

/// Runs one command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "5", "4-6", "2,3,5" or combinations such as "1-3,7"; empty text gives an
/// empty list. Throws std::invalid_argument on anything else.
std::vector<int> parse_range(const std::string& text);

}  // namespace pcmri::cli
