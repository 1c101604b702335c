#include "doctest.h"
#include "fdgs/accumulator.hpp"
#include "fdgs/decompose.hpp"

using namespace fdgs;

namespace {

const Params t1 = Params::profile("T1");

// Reference recombination straight from the definition: split the key, take
// the two halves' syndromes, decompose.  Shares nothing with hash_node's code
// path beyond the primitive linear algebra.
BitVec ref_hash(const HashKey& key, const BitVec& u0, const BitVec& u1, const Params& p) {
    ZqVec acc(p.n, 0);
    for (uint32_t i = 0; i < p.n; ++i) {
        uint64_t s = 0;
        for (uint32_t j = 0; j < p.nk(); ++j) {
            if (u0[j]) s += key.A.at(i, j);
            if (u1[j]) s += key.A.at(i, p.nk() + j);
        }
        acc[i] = uint32_t(s % p.q);
    }
    return bin_decompose(acc, p);
}

BitVec ref_label(const HashKey& key, const std::vector<BitVec>& leaves, uint32_t level,
                 uint32_t idx, const Params& p) {
    if (level == p.ell) return leaves[idx];
    return ref_hash(key, ref_label(key, leaves, level + 1, 2 * idx, p),
                    ref_label(key, leaves, level + 1, 2 * idx + 1, p), p);
}

std::vector<BitVec> random_leaves(Rng& rng, const Params& p) {
    std::vector<BitVec> leaves(p.N);
    for (auto& leaf : leaves) leaf = sample_uniform_bits(rng, p.nk());
    return leaves;
}

} // namespace

TEST_CASE("tree construction matches the recursive reference") {
    Rng rng(41);
    for (const Params& p : {t1, Params::custom(4, 12289, 4, 3, 10, "T1-l4")}) {
        HashKey key = t_setup(p, rng.next_u64());
        auto leaves = random_leaves(rng, p);
        MerkleTree tree = t_acc(key, leaves, p);
        REQUIRE(tree.depth == p.ell);
        REQUIRE(tree.levels.size() == p.ell + 1);
        for (uint32_t lvl = 0; lvl <= p.ell; ++lvl) {
            REQUIRE(tree.levels[lvl].size() == (1u << lvl));
            for (uint32_t idx = 0; idx < (1u << lvl); ++idx)
                CHECK(tree.levels[lvl][idx] == ref_label(key, leaves, lvl, idx, p));
        }
    }
}

TEST_CASE("witnesses verify for every leaf and break under tampering") {
    Rng rng(42);
    HashKey key = t_setup(t1, 7);
    auto leaves = random_leaves(rng, t1);
    MerkleTree tree = t_acc(key, leaves, t1);

    for (uint32_t j = 0; j < t1.N; ++j) {
        MembershipWitness w = t_witness(tree, j);
        CHECK(w.path_bits == index_to_path(j, t1.ell));
        CHECK(t_verify(key, tree.root(), leaves[j], w, t1));

        BitVec bad_leaf = leaves[j];
        bad_leaf[j % bad_leaf.size()] ^= 1;
        CHECK(!t_verify(key, tree.root(), bad_leaf, w, t1));

        MembershipWitness bad = w;
        bad.siblings[1][3] ^= 1;
        CHECK(!t_verify(key, tree.root(), leaves[j], bad, t1));

        MembershipWitness flipped = w;
        flipped.path_bits[0] ^= 1;
        CHECK(!t_verify(key, tree.root(), leaves[j], flipped, t1));

        BitVec other_root = tree.levels[1][0];
        CHECK(!t_verify(key, other_root, leaves[j], w, t1));
    }
}

TEST_CASE("update rewrites exactly ell+1 labels and tracks a full rebuild") {
    Rng rng(43);
    HashKey key = t_setup(t1, 9);
    auto leaves = random_leaves(rng, t1);
    MerkleTree tree = t_acc(key, leaves, t1);

    for (int step = 0; step < 20; ++step) {
        uint32_t j = rng.uniform(t1.N);
        BitVec fresh = sample_uniform_bits(rng, t1.nk());
        uint64_t before = tree.labels_written;
        BitVec root = t_update(tree, key, index_to_path(j, t1.ell), fresh, t1);
        CHECK(tree.labels_written - before == t1.ell + 1);
        leaves[j] = fresh;

        MerkleTree rebuilt = t_acc(key, leaves, t1);
        CHECK(root == rebuilt.root());
        for (uint32_t lvl = 0; lvl <= t1.ell; ++lvl)
            CHECK(tree.levels[lvl] == rebuilt.levels[lvl]);
    }
}

TEST_CASE("witnesses from an updated tree keep verifying") {
    Rng rng(44);
    HashKey key = t_setup(t1, 10);
    auto leaves = random_leaves(rng, t1);
    MerkleTree tree = t_acc(key, leaves, t1);
    BitVec zero(t1.nk(), 0);
    t_update(tree, key, index_to_path(2, t1.ell), zero, t1);

    for (uint32_t j = 0; j < t1.N; ++j) {
        MembershipWitness w = t_witness(tree, j);
        const BitVec& leaf = j == 2 ? zero : leaves[j];
        CHECK(t_verify(key, tree.root(), leaf, w, t1));
    }
    // the pre-update witness for the changed leaf is stale now
    MerkleTree original = t_acc(key, leaves, t1);
    MembershipWitness old = t_witness(original, 2);
    CHECK(!t_verify(key, tree.root(), leaves[2], old, t1));
}

TEST_CASE("path_nodes returns the labels the verification recursion visits") {
    Rng rng(45);
    HashKey key = t_setup(t1, 11);
    auto leaves = random_leaves(rng, t1);
    MerkleTree tree = t_acc(key, leaves, t1);

    for (uint32_t j = 0; j < t1.N; ++j) {
        MembershipWitness w = t_witness(tree, j);
        auto nodes = path_nodes(key, leaves[j], w, t1);
        REQUIRE(nodes.size() == t1.ell - 1);
        // node i sits at level i along the path to leaf j
        for (uint32_t i = 1; i < t1.ell; ++i)
            CHECK(nodes[i - 1] == tree.levels[i][j >> (t1.ell - i)]);
    }
}
