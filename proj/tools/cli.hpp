#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ramlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitComputation = 4;

// args excludes the program name. Summaries go to out; errors go to err as a
// single JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramlab::cli
