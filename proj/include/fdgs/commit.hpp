#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fdgs/params.hpp"

namespace fdgs {

using Digest = std::array<uint8_t, 32>;
constexpr size_t kComRandLen = 32;

enum class ComMode : uint8_t {
    Sponge = 0,  // keyed sponge: SHAKE256(key || len || payload || rho)
    Sis = 1,     // A_com * bits(payload) + B_com * bits(rho) mod q, columns
                 // expanded on demand from the key; statistically hiding in rho
};

// Commitment key carried in the public parameters; 32 key bytes seed both the
// sponge and the on-demand SIS columns.
struct ComKey {
    ComMode mode = ComMode::Sponge;
    std::vector<uint8_t> key;  // 32 bytes
    uint32_t n = 0;            // SIS mode output rows
    uint32_t q = 0;
};

ComKey com_keygen(ComMode mode, const Params& p, uint64_t seed);

// Deterministic in (payload, rho); binding is computational in both modes.
Digest com_commit(const ComKey& key, std::span<const uint8_t> payload,
                  std::span<const uint8_t> rho);

} // namespace fdgs
