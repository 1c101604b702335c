#include "doctest.h"
#include "fdgs/commit.hpp"
#include "fdgs/linalg.hpp"

using namespace fdgs;

namespace {
const Params t1 = Params::profile("T1");

std::vector<uint8_t> rand_bytes(uint64_t seed, size_t len) {
    Rng rng(seed);
    return rng.bytes(len);
}
}  // namespace

TEST_CASE("commitments are deterministic in payload and randomness") {
    for (ComMode mode : {ComMode::Sponge, ComMode::Sis}) {
        ComKey key = com_keygen(mode, t1, 42);
        auto payload = rand_bytes(1, 200);
        auto rho = rand_bytes(2, kComRandLen);
        Digest a = com_commit(key, payload, rho);
        Digest b = com_commit(key, payload, rho);
        CHECK(a == b);
    }
}

TEST_CASE("any input change moves the digest") {
    ComKey key = com_keygen(ComMode::Sponge, t1, 7);
    auto payload = rand_bytes(3, 64);
    auto rho = rand_bytes(4, kComRandLen);
    Digest base = com_commit(key, payload, rho);

    auto payload2 = payload;
    payload2[10] ^= 1;
    CHECK(com_commit(key, payload2, rho) != base);

    auto rho2 = rho;
    rho2[0] ^= 0x80;
    CHECK(com_commit(key, payload, rho2) != base);

    ComKey other = com_keygen(ComMode::Sponge, t1, 8);
    CHECK(com_commit(other, payload, rho) != base);
}

TEST_CASE("the two modes disagree") {
    ComKey sponge = com_keygen(ComMode::Sponge, t1, 5);
    ComKey sis = com_keygen(ComMode::Sis, t1, 5);
    auto payload = rand_bytes(9, 128);
    auto rho = rand_bytes(10, kComRandLen);
    CHECK(com_commit(sponge, payload, rho) != com_commit(sis, payload, rho));
}

TEST_CASE("key generation is deterministic per seed") {
    ComKey a = com_keygen(ComMode::Sis, t1, 99);
    ComKey b = com_keygen(ComMode::Sis, t1, 99);
    ComKey c = com_keygen(ComMode::Sis, t1, 100);
    CHECK(a.key == b.key);
    CHECK(a.key != c.key);
    CHECK(a.mode == ComMode::Sis);
}

TEST_CASE("empty payload commits cleanly") {
    ComKey key = com_keygen(ComMode::Sponge, t1, 1);
    std::vector<uint8_t> empty;
    auto rho = rand_bytes(11, kComRandLen);
    Digest d = com_commit(key, empty, rho);
    Digest zero{};
    CHECK(d != zero);
}
