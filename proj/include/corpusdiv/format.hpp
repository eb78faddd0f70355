#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace corpusdiv {

// Shortest decimal representation that round-trips to the same double.
// NaN is written as "nan", infinities as "inf" / "-inf".
std::string format_double(double value);

// 64-bit FNV-1a. Used for config fingerprints and input digests.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);

}  // namespace corpusdiv
