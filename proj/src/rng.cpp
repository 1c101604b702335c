#include "fdgs/rng.hpp"

namespace fdgs {

uint32_t Rng::uniform(uint32_t bound) {
    // rejection sampling on the top 32 bits; bound >= 1
    if (bound <= 1) return 0;
    uint64_t limit = (uint64_t(1) << 32) - ((uint64_t(1) << 32) % bound);
    for (;;) {
        uint64_t draw = gen_() >> 32;
        if (draw < limit) return static_cast<uint32_t>(draw % bound);
    }
}

std::vector<uint8_t> Rng::bytes(size_t len) {
    std::vector<uint8_t> out(len);
    size_t i = 0;
    while (i < len) {
        uint64_t w = gen_();
        for (int b = 0; b < 8 && i < len; ++b, ++i) out[i] = uint8_t(w >> (8 * b));
    }
    return out;
}

std::vector<uint32_t> Rng::permutation(uint32_t len) {
    std::vector<uint32_t> p(len);
    for (uint32_t i = 0; i < len; ++i) p[i] = i;
    shuffle(p);
    return p;
}

} // namespace fdgs
