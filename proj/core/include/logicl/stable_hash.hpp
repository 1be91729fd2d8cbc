#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace logicl {

/// 64-bit FNV-1a. Stable across platforms and runs; not cryptographic.
std::uint64_t fnv1a64(std::string_view data) noexcept;

/// 32 hex chars built from two independent FNV-1a streams. Used as the
/// content key in the embedding cache and the completion replay store.
std::string stable_digest(std::string_view data);

/// One SplitMix64 step; used to derive per-row seeds from a base seed.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace logicl
