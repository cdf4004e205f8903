#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zumm::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs the command line. Returns 0 on success, 1 on a validation error and
/// 2 when a numerical consistency check fails. Results go to --out, or to
/// `out` when --out is '-' or absent; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zumm::cli
