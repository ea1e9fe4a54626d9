#pragma once

#include <cstdint>
#include <string_view>

namespace qosm {

/// Counter-based deterministic randomness: every draw is a pure function of
/// (seed, stream labels), so emitted values can be reproduced exactly in any
/// order.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_label(std::string_view label);

/// Uniform in [0, 1).
double unit_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                 std::uint64_t c = 0);

/// Standard normal via Box-Muller over two hashed uniforms.
double gauss_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                  std::uint64_t c = 0);

}  // namespace qosm
