#include "qosm/sim/random.hpp"

#include <cmath>
#include <numbers>

namespace qosm {

std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

double unit_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = mix64(seed ^ mix64(a ^ mix64(b ^ mix64(c))));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double gauss_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    double u1 = unit_hash(seed, a, b, c * 2 + 1);
    double u2 = unit_hash(seed, a, b, c * 2 + 2);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace qosm
