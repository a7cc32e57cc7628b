#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rcsim {

// 64-bit FNV-1a. Stable across platforms; used for trace digests,
// mock-backend derivations, and cache keys.
std::uint64_t fnv1a64(std::string_view data);
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed);

// Lower-case, zero-padded 16-char hex of a 64-bit hash.
std::string hex16(std::uint64_t value);

inline std::string fnv_hex(std::string_view data) { return hex16(fnv1a64(data)); }

}  // namespace rcsim
