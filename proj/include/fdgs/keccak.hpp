#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fdgs {

// Keccak-f[1600] sponge exposed as the SHAKE extendable-output functions.
// Absorb any number of times, then squeeze any number of times; squeezing is
// streaming (two 32-byte squeezes equal one 64-byte squeeze).
class Shake {
public:
    enum class Variant { Shake128, Shake256 };

    explicit Shake(Variant v);

    void absorb(std::span<const uint8_t> data);
    void absorb(const void* data, size_t len);
    void squeeze(uint8_t* out, size_t len);  // first call finalizes absorption
    std::vector<uint8_t> squeeze(size_t len);

private:
    void permute();

    std::array<uint64_t, 25> state_{};
    size_t rate_;       // bytes
    size_t offset_ = 0; // within current block
    bool squeezing_ = false;
};

std::vector<uint8_t> shake128(std::span<const uint8_t> data, size_t outlen);
std::vector<uint8_t> shake256(std::span<const uint8_t> data, size_t outlen);

} // namespace fdgs
