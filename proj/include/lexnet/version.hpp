#pragma once

#include <string_view>

namespace lexnet {

inline constexpr std::string_view tool_name = "lexnet";
inline constexpr std::string_view tool_version = "0.1.0";

// Identifier of the PRNG algorithm, recorded in output metadata so runs
// can be reproduced bit-exactly.
inline constexpr std::string_view rng_algorithm = "mt19937_64";

}  // namespace lexnet
