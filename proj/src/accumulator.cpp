#include "fdgs/accumulator.hpp"

namespace fdgs {

namespace {

void check_label(const BitVec& v, const Params& p, const char* what) {
    require(v.size() == p.nk(), Err::DimensionMismatch, std::string(what) + " must have length nk");
    for (uint8_t b : v) require(b <= 1, Err::InvalidResidue, std::string(what) + " must be binary");
}

} // namespace

BitVec hash_node(const HashKey& key, const BitVec& u0, const BitVec& u1, const Params& p) {
    check_label(u0, p, "left child");
    check_label(u1, p, "right child");
    require(key.A.rows == p.n && key.A.cols == p.m, Err::DimensionMismatch, "hash key shape");
    uint32_t nk = p.nk();
    ZqVec acc(p.n, 0);
    for (uint32_t r = 0; r < p.n; ++r) {
        const uint32_t* row = key.A.row(r);
        uint64_t sum = 0;
        for (uint32_t c = 0; c < nk; ++c) {
            if (u0[c]) sum += row[c];
            if (u1[c]) sum += row[nk + c];
        }
        acc[r] = uint32_t(sum % p.q);
    }
    return bin_decompose(acc, p);
}

HashKey t_setup(const Params& p, uint64_t seed) {
    Rng rng(seed);
    return HashKey{sample_uniform_matrix(rng, p.n, p.m, p.q)};
}

MerkleTree t_acc(const HashKey& key, const std::vector<BitVec>& leaves, const Params& p) {
    require(leaves.size() == p.N, Err::DimensionMismatch, "leaf count must be N");
    MerkleTree tree;
    tree.depth = p.ell;
    tree.levels.resize(p.ell + 1);
    tree.levels[p.ell] = leaves;
    for (auto& leaf : tree.levels[p.ell]) check_label(leaf, p, "leaf");
    for (uint32_t lvl = p.ell; lvl-- > 0;) {
        tree.levels[lvl].resize(1u << lvl);
        for (uint32_t i = 0; i < (1u << lvl); ++i)
            tree.levels[lvl][i] =
                hash_node(key, tree.levels[lvl + 1][2 * i], tree.levels[lvl + 1][2 * i + 1], p);
    }
    return tree;
}

MembershipWitness t_witness(const MerkleTree& tree, uint32_t index) {
    require(index < tree.levels[tree.depth].size(), Err::OutOfRange, "leaf index out of range");
    MembershipWitness w;
    w.path_bits = index_to_path(index, tree.depth);
    w.siblings.resize(tree.depth);
    uint32_t node = index;
    // walk up: sibling at depth d goes to siblings[depth - d] (leaf-level first)
    for (uint32_t d = tree.depth; d >= 1; --d) {
        w.siblings[tree.depth - d] = tree.levels[d][node ^ 1];
        node >>= 1;
    }
    return w;
}

bool t_verify(const HashKey& key, const BitVec& root, const BitVec& leaf,
              const MembershipWitness& w, const Params& p) {
    require(w.path_bits.size() == p.ell && w.siblings.size() == p.ell, Err::DimensionMismatch,
            "witness must carry ell path bits and ell siblings");
    check_label(root, p, "root");
    BitVec v = leaf;
    for (uint32_t d = p.ell; d >= 1; --d) {
        const BitVec& sib = w.siblings[p.ell - d];
        uint8_t bit = w.path_bits[d - 1];
        v = bit == 0 ? hash_node(key, v, sib, p) : hash_node(key, sib, v, p);
    }
    return v == root;
}

BitVec t_update(MerkleTree& tree, const HashKey& key, const BitVec& path_bits,
                const BitVec& new_leaf, const Params& p) {
    require(path_bits.size() == tree.depth, Err::DimensionMismatch, "path length");
    check_label(new_leaf, p, "leaf");
    uint32_t index = path_to_index(path_bits);
    tree.levels[tree.depth][index] = new_leaf;
    ++tree.labels_written;
    uint32_t node = index;
    for (uint32_t d = tree.depth; d >= 1; --d) {
        uint32_t parent = node >> 1;
        tree.levels[d - 1][parent] =
            hash_node(key, tree.levels[d][parent * 2], tree.levels[d][parent * 2 + 1], p);
        ++tree.labels_written;
        node = parent;
    }
    return tree.root();
}

std::vector<BitVec> path_nodes(const HashKey& key, const BitVec& leaf,
                               const MembershipWitness& w, const Params& p) {
    std::vector<BitVec> nodes(p.ell >= 1 ? p.ell - 1 : 0);
    BitVec v = leaf;
    for (uint32_t d = p.ell; d >= 2; --d) {
        const BitVec& sib = w.siblings[p.ell - d];
        uint8_t bit = w.path_bits[d - 1];
        v = bit == 0 ? hash_node(key, v, sib, p) : hash_node(key, sib, v, p);
        nodes[d - 2] = v;  // label at depth d-1
    }
    return nodes;
}

} // namespace fdgs
