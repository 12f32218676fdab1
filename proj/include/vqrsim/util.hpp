#pragma once

#include <string>
#include <string_view>

namespace vqrsim {

// 6-significant-digit form used for all report output.
std::string format_g6(double v);

// Shortest round-tripping form, used for data files that must reload exactly.
std::string format_exact(double v);

// The value format_g6 would print, as a double (for JSON serialization).
double round_g6(double v);

// Replaces anything outside [A-Za-z0-9_.-] so tokens are safe in file names.
std::string sanitize_token(std::string_view s);

}  // namespace vqrsim
