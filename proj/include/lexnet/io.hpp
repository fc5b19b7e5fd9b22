#pragma once

#include <string>
#include <string_view>

namespace lexnet::io {

// Shortest round-trip decimal form (std::to_chars), so emitted numbers are
// identical across invocations and parse back to the same double.
std::string format_double(double value);

std::string read_text_file(const std::string& path);   // usage error when unreadable
void write_text_file(const std::string& path, std::string_view content);  // runtime error on failure

}  // namespace lexnet::io
