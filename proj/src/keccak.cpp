#include "fdgs/keccak.hpp"

#include <cstring>

namespace fdgs {

namespace {

constexpr uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

constexpr int kRho[25] = {0,  1,  62, 28, 27, 36, 44, 6,  55, 20, 3,  10, 43,
                          25, 39, 41, 45, 15, 21, 8,  18, 2,  61, 56, 14};

inline uint64_t rotl(uint64_t x, int s) {
    return s == 0 ? x : (x << s) | (x >> (64 - s));
}

} // namespace

Shake::Shake(Variant v) : rate_(v == Variant::Shake128 ? 168 : 136) {}

void Shake::permute() {
    auto& a = state_;
    for (int round = 0; round < 24; ++round) {
        // theta
        uint64_t c[5], d[5];
        for (int x = 0; x < 5; ++x)
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        for (int x = 0; x < 5; ++x)
            d[x] = c[(x + 4) % 5] ^ rotl(c[(x + 1) % 5], 1);
        for (int i = 0; i < 25; ++i) a[i] ^= d[i % 5];
        // rho + pi
        uint64_t b[25];
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl(a[x + 5 * y], kRho[x + 5 * y]);
        // chi
        for (int x = 0; x < 5; ++x)
            for (int y = 0; y < 5; ++y)
                a[x + 5 * y] = b[x + 5 * y] ^ (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
        // iota
        a[0] ^= kRoundConstants[round];
    }
}

void Shake::absorb(std::span<const uint8_t> data) { absorb(data.data(), data.size()); }

void Shake::absorb(const void* data, size_t len) {
    const uint8_t* p = static_cast<const uint8_t*>(data);
    // absorbing after squeezing started is a programming error; keep it simple
    for (size_t i = 0; i < len; ++i) {
        reinterpret_cast<uint8_t*>(state_.data())[offset_] ^= p[i];
        if (++offset_ == rate_) {
            permute();
            offset_ = 0;
        }
    }
}

void Shake::squeeze(uint8_t* out, size_t len) {
    if (!squeezing_) {
        // SHAKE domain padding 0x1F ... 0x80
        reinterpret_cast<uint8_t*>(state_.data())[offset_] ^= 0x1F;
        reinterpret_cast<uint8_t*>(state_.data())[rate_ - 1] ^= 0x80;
        permute();
        offset_ = 0;
        squeezing_ = true;
    }
    for (size_t i = 0; i < len; ++i) {
        if (offset_ == rate_) {
            permute();
            offset_ = 0;
        }
        out[i] = reinterpret_cast<const uint8_t*>(state_.data())[offset_++];
    }
}

std::vector<uint8_t> Shake::squeeze(size_t len) {
    std::vector<uint8_t> out(len);
    squeeze(out.data(), len);
    return out;
}

std::vector<uint8_t> shake128(std::span<const uint8_t> data, size_t outlen) {
    Shake s(Shake::Variant::Shake128);
    s.absorb(data);
    return s.squeeze(outlen);
}

std::vector<uint8_t> shake256(std::span<const uint8_t> data, size_t outlen) {
    Shake s(Shake::Variant::Shake256);
    s.absorb(data);
    return s.squeeze(outlen);
}

} // namespace fdgs
