#pragma once

#include <cstdint>
#include <vector>

#include "fdgs/decompose.hpp"
#include "fdgs/linalg.hpp"
#include "fdgs/params.hpp"
#include "fdgs/rng.hpp"

namespace fdgs {

// Hashing key A = [A0 | A1], each half n x nk.  The node hash is
// bin(A0*u0 + A1*u1 mod q), so A0*u0 + A1*u1 == G * hash_node(u0,u1) (mod q).
struct HashKey {
    ZqMat A;  // n x 2nk
};

// Full binary tree of depth ell, one nk-bit label per node.
// levels[0] holds the root; levels[ell] holds the N leaves in index order.
// labels_written counts node labels recomputed by t_update (bench hook).
struct MerkleTree {
    uint32_t depth = 0;
    std::vector<std::vector<BitVec>> levels;
    uint64_t labels_written = 0;

    const BitVec& root() const { return levels[0][0]; }
    const BitVec& leaf(uint32_t j) const { return levels[depth][j]; }
};

// Authentication path for one leaf: path bits (j_1..j_ell) most significant
// first, and the off-path sibling labels stored leaf-level first
// (siblings[0] = sibling of the leaf, siblings[ell-1] = sibling at the top).
struct MembershipWitness {
    BitVec path_bits;
    std::vector<BitVec> siblings;
};

BitVec hash_node(const HashKey& key, const BitVec& u0, const BitVec& u1, const Params& p);

HashKey t_setup(const Params& p, uint64_t seed);

MerkleTree t_acc(const HashKey& key, const std::vector<BitVec>& leaves, const Params& p);

MembershipWitness t_witness(const MerkleTree& tree, uint32_t index);

bool t_verify(const HashKey& key, const BitVec& root, const BitVec& leaf,
              const MembershipWitness& w, const Params& p);

// Writes the leaf and recomputes exactly its ell ancestors; returns the new root.
BitVec t_update(MerkleTree& tree, const HashKey& key, const BitVec& path_bits,
                const BitVec& new_leaf, const Params& p);

// On-path node labels (v_1..v_{ell-1}) recomputed from the leaf and siblings;
// exactly the intermediate values the verification recursion walks through.
std::vector<BitVec> path_nodes(const HashKey& key, const BitVec& leaf,
                               const MembershipWitness& w, const Params& p);

} // namespace fdgs
