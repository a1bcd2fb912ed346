#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nct::cli {

inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNumericalFailure = 3;

// args excludes the program name. JSON report on out, diagnostics on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nct::cli
