#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace fsetkit::cli {

// sysexits-style codes for failures before a verdict exists.
inline constexpr int kExitUsage = 64;
inline constexpr int kExitValidation = 65;
inline constexpr int kExitResource = 69;
inline constexpr int kExitInternal = 70;

// Parses `args` (without the program name), runs the command, writes the
// report to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Plain-text rendering of a report: one "key: value" line per field.
std::string render_text(const nlohmann::ordered_json& report);

}  // namespace fsetkit::cli
