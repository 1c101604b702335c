#include "fdgs/commit.hpp"

#include "fdgs/encode.hpp"
#include "fdgs/errors.hpp"
#include "fdgs/keccak.hpp"
#include "fdgs/rng.hpp"

namespace fdgs {

namespace {

constexpr char kSpongeTag[] = "com/sponge";
constexpr char kColumnTag[] = "com/col";

// column index space: payload bit columns first, then rho bit columns
ZqVec sis_column(const ComKey& key, uint8_t domain, uint64_t index) {
    Shake xof(Shake::Variant::Shake256);
    xof.absorb(kColumnTag, sizeof(kColumnTag) - 1);
    xof.absorb(key.key.data(), key.key.size());
    uint8_t hdr[9];
    hdr[0] = domain;
    for (int i = 0; i < 8; ++i) hdr[1 + i] = uint8_t(index >> (8 * i));
    xof.absorb(hdr, sizeof(hdr));
    ZqVec col(key.n);
    // rejection-sample residues from 2-byte draws to stay uniform mod q
    uint32_t accept = 65536 - 65536 % key.q;
    for (auto& v : col) {
        for (;;) {
            uint8_t b[2];
            xof.squeeze(b, 2);
            uint32_t draw = uint32_t(b[0]) | uint32_t(b[1]) << 8;
            if (draw < accept) {
                v = draw % key.q;
                break;
            }
        }
    }
    return col;
}

} // namespace

ComKey com_keygen(ComMode mode, const Params& p, uint64_t seed) {
    ComKey key;
    key.mode = mode;
    key.n = p.n;
    key.q = p.q;
    Rng rng(seed);
    key.key = rng.bytes(32);
    return key;
}

Digest com_commit(const ComKey& key, std::span<const uint8_t> payload,
                  std::span<const uint8_t> rho) {
    require(rho.size() == kComRandLen, Err::DimensionMismatch, "commitment randomness length");
    Digest out{};
    if (key.mode == ComMode::Sponge) {
        Shake xof(Shake::Variant::Shake256);
        xof.absorb(kSpongeTag, sizeof(kSpongeTag) - 1);
        xof.absorb(key.key.data(), key.key.size());
        uint8_t len[8];
        for (int i = 0; i < 8; ++i) len[i] = uint8_t(uint64_t(payload.size()) >> (8 * i));
        xof.absorb(len, sizeof(len));
        xof.absorb(payload);
        xof.absorb(rho);
        xof.squeeze(out.data(), out.size());
        return out;
    }
    // SIS mode: commit to the payload bits and randomness bits
    ZqVec acc(key.n, 0);
    auto add_bits = [&](std::span<const uint8_t> data, uint8_t domain) {
        for (size_t byte = 0; byte < data.size(); ++byte)
            for (int bit = 0; bit < 8; ++bit) {
                if (!((data[byte] >> bit) & 1)) continue;
                ZqVec col = sis_column(key, domain, byte * 8 + bit);
                for (uint32_t r = 0; r < key.n; ++r) acc[r] = (acc[r] + col[r]) % key.q;
            }
    };
    add_bits(payload, 0);
    add_bits(rho, 1);
    // also bind the payload length so differing-length payloads cannot collide
    // by zero-padding
    ZqVec len_col = sis_column(key, 2, payload.size());
    for (uint32_t r = 0; r < key.n; ++r) acc[r] = (acc[r] + len_col[r]) % key.q;
    uint32_t w = residue_width(key.q);
    size_t pos = 0;
    for (uint32_t r = 0; r < key.n && pos + w <= out.size(); ++r)
        for (uint32_t i = 0; i < w; ++i) out[pos++] = uint8_t(acc[r] >> (8 * i));
    return out;
}

} // namespace fdgs
