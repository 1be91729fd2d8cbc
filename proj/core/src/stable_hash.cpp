#include "logicl/stable_hash.hpp"

#include <array>

namespace logicl {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x00000100000001b3ULL;

std::uint64_t fnv1a64_seeded(std::string_view data, std::uint64_t seed) noexcept {
  std::uint64_t hash = seed;
  for (unsigned char ch : data) {
    hash ^= ch;
    hash *= kFnvPrime;
  }
  return hash;
}

void append_hex(std::string& out, std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  for (int shift = 60; shift >= 0; shift -= 4) {
    out.push_back(digits[(value >> shift) & 0xf]);
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) noexcept {
  return fnv1a64_seeded(data, kFnvOffset);
}

std::string stable_digest(std::string_view data) {
  // Two streams with distinct offsets; the second also folds in the length
  // so that the pair is not a function of a single 64-bit state.
  const std::uint64_t a = fnv1a64_seeded(data, kFnvOffset);
  const std::uint64_t b =
      splitmix64(fnv1a64_seeded(data, kFnvOffset ^ 0x9e3779b97f4a7c15ULL) ^ data.size());
  std::string out;
  out.reserve(32);
  append_hex(out, a);
  append_hex(out, b);
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace logicl
