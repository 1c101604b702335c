#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fdgs {

// Deterministic seeded randomness for every sampler in the library.
// One master seed per top-level operation; independent streams are obtained
// with fork(), which derives a child seed from the parent stream.  Profiles
// are toy-sized and reproducibility is the goal, so a std::mt19937_64 is the
// right tool; nothing here pretends to be a CSPRNG.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed), seed_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t next_u64() { return gen_(); }

    // uniform in [0, bound), bias-free
    uint32_t uniform(uint32_t bound);

    uint32_t zq(uint32_t q) { return uniform(q); }

    uint8_t bit() { return static_cast<uint8_t>(uniform(2)); }

    // uniform in [-beta, beta]
    int32_t bounded(uint32_t beta) {
        return static_cast<int32_t>(uniform(2 * beta + 1)) - static_cast<int32_t>(beta);
    }

    std::vector<uint8_t> bytes(size_t len);

    Rng fork() { return Rng(gen_()); }

    // Fisher-Yates; identity-initialized index permutation of size len
    std::vector<uint32_t> permutation(uint32_t len);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(uint32_t(i))]);
    }

private:
    std::mt19937_64 gen_;
    uint64_t seed_;
};

} // namespace fdgs
