#include "fdgs/relations.hpp"

#include <cstdlib>

#include "fdgs/errors.hpp"

namespace fdgs {

namespace {

BitVec random_weight(Rng& rng, uint32_t len, uint32_t w) {
    auto order = rng.permutation(len);
    BitVec v(len, 0);
    for (uint32_t i = 0; i < w; ++i) v[order[i]] = 1;
    return v;
}

void append_digits(TernVec& out, const TernVec& d) { out.insert(out.end(), d.begin(), d.end()); }

bool ternary_counts(const ZqVec& t, uint32_t base, uint32_t len, uint32_t ones, uint32_t zeros,
                    uint32_t negs, uint32_t q) {
    uint32_t c1 = 0, c0 = 0, cn = 0;
    for (uint32_t i = 0; i < len; ++i) {
        uint32_t v = t[base + i];
        if (v == 1)
            ++c1;
        else if (v == 0)
            ++c0;
        else if (v == q - 1)
            ++cn;
        else
            return false;
    }
    return c1 == ones && c0 == zeros && cn == negs;
}

} // namespace

BitVec extend_weight(const BitVec& v, uint32_t target_len, uint32_t target_weight) {
    require(target_len >= v.size(), Err::DimensionMismatch, "extension shrinks the vector");
    uint32_t w = hamming_weight(v);
    require(w <= target_weight, Err::CannotExtend, "vector already too heavy");
    uint32_t pad = target_len - static_cast<uint32_t>(v.size());
    uint32_t need = target_weight - w;
    require(need <= pad, Err::CannotExtend, "not enough slots for the target weight");
    BitVec out = v;
    out.resize(target_len, 0);
    for (uint32_t i = 0; i < need; ++i) out[v.size() + i] = 1;
    return out;
}

ZqVec ternary_expand(const TernVec& digits, uint32_t q) {
    uint32_t len = static_cast<uint32_t>(digits.size());
    uint32_t c1 = 0, c0 = 0, cn = 0;
    for (int8_t d : digits) {
        require(d >= -1 && d <= 1, Err::OutOfRange, "digit outside {-1,0,1}");
        if (d == 1)
            ++c1;
        else if (d == 0)
            ++c0;
        else
            ++cn;
    }
    ZqVec out;
    out.reserve(size_t{3} * len);
    for (int8_t d : digits) out.push_back(d == 0 ? 0 : d == 1 ? 1 : q - 1);
    for (uint32_t i = cn; i < len; ++i) out.push_back(q - 1);
    for (uint32_t i = c1; i < len; ++i) out.push_back(1);
    for (uint32_t i = c0; i < len; ++i) out.push_back(0);
    return out;
}

ZqVec ternary_expand_nonzero(const TernVec& v, uint32_t q) {
    uint32_t len = static_cast<uint32_t>(v.size());
    require(len >= 1, Err::DimensionMismatch, "empty vector");
    uint32_t c1 = 0, c0 = 0, cn = 0;
    for (int8_t d : v) {
        require(d >= -1 && d <= 1, Err::OutOfRange, "entry outside {-1,0,1}");
        if (d == 1)
            ++c1;
        else if (d == 0)
            ++c0;
        else
            ++cn;
    }
    // a zero vector would need len ones and len minus-ones in 2*len-1 slots
    require(c0 < len, Err::CannotExtend, "zero vector has no non-zero extension");
    ZqVec out;
    out.reserve(size_t{3} * len - 1);
    for (int8_t d : v) out.push_back(d == 0 ? 0 : d == 1 ? 1 : q - 1);
    for (uint32_t i = cn; i < len; ++i) out.push_back(q - 1);
    for (uint32_t i = c1; i < len; ++i) out.push_back(1);
    for (uint32_t i = c0; i + 1 < len; ++i) out.push_back(0);
    return out;
}

// ---------------------------------------------------------------------------
// signing relation

uint32_t GsLayout::v_star(uint32_t i) const { return (i - 1) * 5 * node(); }
uint32_t GsLayout::v_hat(uint32_t i) const { return v_star(i) + node(); }
uint32_t GsLayout::w_hat(uint32_t i) const {
    return i < ell ? v_star(i) + 3 * node() : p_star() + 3 * leaf();
}
uint32_t GsLayout::p_star() const { return (ell - 1) * 5 * node(); }
uint32_t GsLayout::p_hat() const { return p_star() + leaf(); }
uint32_t GsLayout::x_star() const { return p_star() + 3 * leaf() + 2 * node(); }
uint32_t GsLayout::r_star(uint32_t b) const { return x_star() + 2 * m + (b - 1) * 2 * mE; }
uint32_t GsLayout::j_block(uint32_t i) const { return x_star() + 2 * m + 4 * mE + 2 * (i - 1); }
uint32_t GsLayout::dim() const { return j_block(ell) + 2; }

GsLayout GsLayout::from(const Params& p) {
    GsLayout l;
    l.ell = p.ell;
    l.nk = p.nk();
    l.m = p.m;
    l.mE = p.m_E;
    return l;
}

GsStatement::GsStatement(const Params& p, const HashKey& key, const BitVec& root,
                         const TracingPublicKey& tpk, const CiphertextPair& ct)
    : par_(p), lay_(GsLayout::from(p)) {
    const uint32_t q = p.q, n = p.n, nk = p.nk(), k = p.k, ell = p.ell;
    require(key.A.rows == n && key.A.cols == p.m, Err::DimensionMismatch, "hash key");
    require(root.size() == nk, Err::DimensionMismatch, "root label");
    require(tpk.B.rows == n && tpk.B.cols == p.m_E, Err::DimensionMismatch, "public matrix");
    require(tpk.P1.rows == ell && tpk.P1.cols == p.m_E, Err::DimensionMismatch, "mask matrix 1");
    require(tpk.P2.rows == ell && tpk.P2.cols == p.m_E, Err::DimensionMismatch, "mask matrix 2");
    require(ct.first.c1.size() == n && ct.first.c2.size() == ell, Err::DimensionMismatch,
            "ciphertext 1");
    require(ct.second.c1.size() == n && ct.second.c2.size() == ell, Err::DimensionMismatch,
            "ciphertext 2");

    auto gpow = [q](uint32_t j) { return uint32_t((uint64_t{1} << j) % q); };
    const uint32_t rows = ell * n + n + 2 * (n + ell);
    ZqMat M(rows, lay_.dim());
    ZqVec u(rows, 0);
    uint32_t row = 0;

    // one n-row block per tree level; children enter through the placed
    // copies, the parent through its node chunk, the root through the target
    for (uint32_t i = 1; i <= ell; ++i) {
        uint32_t child = i < ell ? lay_.v_hat(i) : lay_.p_hat();
        uint32_t half = i < ell ? lay_.node() : lay_.leaf();
        uint32_t sib = lay_.w_hat(i);
        for (uint32_t t = 0; t < n; ++t) {
            uint32_t rw = row + t;
            for (uint32_t c = 0; c < nk; ++c) {
                M.at(rw, child + c) = key.A.at(t, c);
                M.at(rw, child + half + c) = key.A.at(t, nk + c);
                M.at(rw, sib + c) = key.A.at(t, c);
                M.at(rw, sib + lay_.node() + c) = key.A.at(t, nk + c);
            }
            if (i == 1) {
                uint64_t acc = 0;
                for (uint32_t j = 0; j < k; ++j) acc += uint64_t(gpow(j)) * root[t * k + j];
                u[rw] = uint32_t(acc % q);
            } else {
                uint32_t parent = lay_.v_star(i - 1);
                for (uint32_t j = 0; j < k; ++j) M.at(rw, parent + t * k + j) = q - gpow(j);
            }
        }
        row += n;
    }

    // key equation ties the key chunk to the leaf chunk
    for (uint32_t t = 0; t < n; ++t) {
        uint32_t rw = row + t;
        for (uint32_t c = 0; c < p.m; ++c) M.at(rw, lay_.x_star() + c) = key.A.at(t, c);
        for (uint32_t j = 0; j < k; ++j) M.at(rw, lay_.p_star() + t * k + j) = q - gpow(j);
    }
    row += n;

    // the two ciphertexts; both plaintext rows read the direction blocks
    for (uint32_t b = 1; b <= 2; ++b) {
        const Ciphertext& c = b == 1 ? ct.first : ct.second;
        const ZqMat& P = b == 1 ? tpk.P1 : tpk.P2;
        uint32_t rs = lay_.r_star(b);
        for (uint32_t t = 0; t < n; ++t) {
            uint32_t rw = row + t;
            for (uint32_t cc = 0; cc < p.m_E; ++cc) M.at(rw, rs + cc) = tpk.B.at(t, cc);
            u[rw] = c.c1[t];
        }
        row += n;
        for (uint32_t j = 0; j < ell; ++j) {
            uint32_t rw = row + j;
            for (uint32_t cc = 0; cc < p.m_E; ++cc) M.at(rw, rs + cc) = P.at(j, cc);
            M.at(rw, lay_.j_block(j + 1) + 1) = p.half_q();
            u[rw] = c.c2[j];
        }
        row += ell;
    }

    set_system(std::move(M), std::move(u), q);
}

SternPerm GsStatement::sample_perm(Rng& rng) const {
    SternPerm perm;
    perm.bits.resize(par_.ell);
    for (auto& b : perm.bits) b = rng.bit();
    perm.perms.push_back(rng.permutation(2 * par_.m));
    perm.perms.push_back(rng.permutation(lay_.leaf()));
    perm.perms.push_back(rng.permutation(2 * par_.m_E));
    perm.perms.push_back(rng.permutation(2 * par_.m_E));
    for (uint32_t i = 1; i < par_.ell; ++i) perm.perms.push_back(rng.permutation(lay_.node()));
    for (uint32_t i = 1; i <= par_.ell; ++i) perm.perms.push_back(rng.permutation(lay_.node()));
    return perm;
}

uint32_t GsStatement::perm_bit_count() const { return par_.ell; }

std::vector<uint32_t> GsStatement::perm_lengths() const {
    std::vector<uint32_t> lens{2 * par_.m, lay_.leaf(), 2 * par_.m_E, 2 * par_.m_E};
    for (uint32_t i = 1; i < par_.ell; ++i) lens.push_back(lay_.node());
    for (uint32_t i = 1; i <= par_.ell; ++i) lens.push_back(lay_.node());
    return lens;
}

std::vector<uint32_t> GsStatement::coordinate_map(const SternPerm& perm) const {
    const auto& l = lay_;
    require(perm.bits.size() == par_.ell, Err::DimensionMismatch, "mask bit count");
    auto lens = perm_lengths();
    require(perm.perms.size() == lens.size(), Err::DimensionMismatch, "mask list length");
    for (size_t i = 0; i < lens.size(); ++i)
        require(perm.perms[i].size() == lens[i], Err::DimensionMismatch, "mask entry length");

    std::vector<uint32_t> map(l.dim());
    auto plain = [&](uint32_t base, const std::vector<uint32_t>& pi) {
        for (uint32_t t = 0; t < pi.size(); ++t) map[base + t] = base + pi[t];
    };
    // half swap iff the level bit is set, same index permutation on both halves
    auto placed = [&](uint32_t base, uint32_t half, uint8_t bit, const std::vector<uint32_t>& pi) {
        for (uint32_t t = 0; t < half; ++t) {
            map[base + t] = base + bit * half + pi[t];
            map[base + half + t] = base + (1 - bit) * half + pi[t];
        }
    };

    plain(l.x_star(), perm.perms[0]);
    plain(l.p_star(), perm.perms[1]);
    plain(l.r_star(1), perm.perms[2]);
    plain(l.r_star(2), perm.perms[3]);
    placed(l.p_hat(), l.leaf(), perm.bits[par_.ell - 1], perm.perms[1]);
    for (uint32_t i = 1; i < par_.ell; ++i) {
        const auto& pv = perm.perms[4 + (i - 1)];
        plain(l.v_star(i), pv);
        placed(l.v_hat(i), l.node(), perm.bits[i - 1], pv);
    }
    for (uint32_t i = 1; i <= par_.ell; ++i) {
        const auto& pw = perm.perms[4 + (par_.ell - 1) + (i - 1)];
        placed(l.w_hat(i), l.node(), perm.bits[i - 1], pw);
    }
    for (uint32_t i = 1; i <= par_.ell; ++i) {
        uint32_t base = l.j_block(i);
        map[base] = base + perm.bits[i - 1];
        map[base + 1] = base + 1 - perm.bits[i - 1];
    }
    return map;
}

bool GsStatement::is_valid(const ZqVec& t) const {
    const auto& l = lay_;
    if (t.size() != l.dim()) return false;
    for (uint32_t x : t)
        if (x > 1) return false;
    auto weight = [&](uint32_t base, uint32_t len) {
        uint32_t w = 0;
        for (uint32_t i = 0; i < len; ++i) w += t[base + i];
        return w;
    };
    auto zero = [&](uint32_t base, uint32_t len) {
        for (uint32_t i = 0; i < len; ++i)
            if (t[base + i]) return false;
        return true;
    };
    auto equal = [&](uint32_t a, uint32_t b, uint32_t len) {
        for (uint32_t i = 0; i < len; ++i)
            if (t[a + i] != t[b + i]) return false;
        return true;
    };

    std::vector<uint8_t> jb(par_.ell);
    for (uint32_t i = 1; i <= par_.ell; ++i) {
        uint32_t base = l.j_block(i);
        if (t[base] + t[base + 1] != 1) return false;
        jb[i - 1] = static_cast<uint8_t>(t[base + 1]);
    }
    if (weight(l.x_star(), 2 * l.m) != l.m) return false;
    if (weight(l.p_star(), l.leaf()) != l.nk) return false;
    if (weight(l.r_star(1), 2 * l.mE) != l.mE) return false;
    if (weight(l.r_star(2), 2 * l.mE) != l.mE) return false;

    uint32_t live = l.p_hat() + jb[par_.ell - 1] * l.leaf();
    uint32_t dead = l.p_hat() + (1 - jb[par_.ell - 1]) * l.leaf();
    if (!equal(live, l.p_star(), l.leaf()) || !zero(dead, l.leaf())) return false;

    for (uint32_t i = 1; i < par_.ell; ++i) {
        if (weight(l.v_star(i), l.node()) != l.nk) return false;
        live = l.v_hat(i) + jb[i - 1] * l.node();
        dead = l.v_hat(i) + (1 - jb[i - 1]) * l.node();
        if (!equal(live, l.v_star(i), l.node()) || !zero(dead, l.node())) return false;
    }
    for (uint32_t i = 1; i <= par_.ell; ++i) {
        live = l.w_hat(i) + (1 - jb[i - 1]) * l.node();
        dead = l.w_hat(i) + jb[i - 1] * l.node();
        if (weight(live, l.node()) != l.nk || !zero(dead, l.node())) return false;
    }
    return true;
}

ZqVec GsStatement::sample_valid(Rng& rng) const {
    const auto& l = lay_;
    ZqVec t(l.dim(), 0);
    auto put = [&](uint32_t base, const BitVec& v) {
        for (uint32_t i = 0; i < v.size(); ++i) t[base + i] = v[i];
    };
    std::vector<uint8_t> jb(par_.ell);
    for (auto& b : jb) b = rng.bit();
    for (uint32_t i = 1; i <= par_.ell; ++i) {
        uint32_t base = l.j_block(i);
        t[base] = 1 - jb[i - 1];
        t[base + 1] = jb[i - 1];
    }
    BitVec leaf = random_weight(rng, l.leaf(), l.nk);
    put(l.p_star(), leaf);
    put(l.p_hat() + jb[par_.ell - 1] * l.leaf(), leaf);
    put(l.x_star(), random_weight(rng, 2 * l.m, l.m));
    put(l.r_star(1), random_weight(rng, 2 * l.mE, l.mE));
    put(l.r_star(2), random_weight(rng, 2 * l.mE, l.mE));
    for (uint32_t i = 1; i < par_.ell; ++i) {
        BitVec v = random_weight(rng, l.node(), l.nk);
        put(l.v_star(i), v);
        put(l.v_hat(i) + jb[i - 1] * l.node(), v);
    }
    for (uint32_t i = 1; i <= par_.ell; ++i)
        put(l.w_hat(i) + (1 - jb[i - 1]) * l.node(), random_weight(rng, l.node(), l.nk));
    return t;
}

GsWitness assemble_gs_witness(const Params& p, const HashKey& key, const BitVec& x,
                              const MembershipWitness& w, const BitVec& r1, const BitVec& r2) {
    require(x.size() == p.m, Err::DimensionMismatch, "key bits");
    require(w.path_bits.size() == p.ell && w.siblings.size() == p.ell, Err::DimensionMismatch,
            "membership witness shape");
    require(r1.size() == p.m_E && r2.size() == p.m_E, Err::DimensionMismatch,
            "encryption randomness");
    GsWitness wit;
    wit.x = x;
    wit.path = w.path_bits;
    wit.leaf = bin_decompose(mat_bits(key.A, x, p.q), p);
    wit.siblings.resize(p.ell);
    for (uint32_t i = 0; i < p.ell; ++i) wit.siblings[i] = w.siblings[p.ell - 1 - i];
    wit.nodes = path_nodes(key, wit.leaf, w, p);
    wit.r1 = r1;
    wit.r2 = r2;
    return wit;
}

ZqVec pack_gs_witness(const GsLayout& l, const GsWitness& wit) {
    require(wit.x.size() == 2 * l.nk && wit.leaf.size() == l.nk, Err::DimensionMismatch,
            "key or leaf size");
    require(wit.path.size() == l.ell && wit.siblings.size() == l.ell, Err::DimensionMismatch,
            "path shape");
    require(wit.nodes.size() + 1 == l.ell, Err::DimensionMismatch, "node count");
    require(wit.r1.size() == l.mE && wit.r2.size() == l.mE, Err::DimensionMismatch,
            "randomness size");

    ZqVec z(l.dim(), 0);
    auto put = [&](uint32_t base, const BitVec& v) {
        for (uint32_t i = 0; i < v.size(); ++i) z[base + i] = v[i];
    };

    BitVec pstar = extend_weight(wit.leaf, l.leaf(), l.nk);  // CannotExtend on a zero leaf
    put(l.p_star(), pstar);
    put(l.p_hat() + wit.path[l.ell - 1] * l.leaf(), pstar);
    put(l.x_star(), extend_weight(wit.x, 2 * l.m, l.m));
    put(l.r_star(1), extend_weight(wit.r1, 2 * l.mE, l.mE));
    put(l.r_star(2), extend_weight(wit.r2, 2 * l.mE, l.mE));
    for (uint32_t i = 1; i < l.ell; ++i) {
        require(wit.nodes[i - 1].size() == l.nk, Err::DimensionMismatch, "node size");
        BitVec vs = extend_weight(wit.nodes[i - 1], l.node(), l.nk);
        put(l.v_star(i), vs);
        put(l.v_hat(i) + wit.path[i - 1] * l.node(), vs);
    }
    for (uint32_t i = 1; i <= l.ell; ++i) {
        require(wit.siblings[i - 1].size() == l.nk, Err::DimensionMismatch, "sibling size");
        BitVec ws = extend_weight(wit.siblings[i - 1], l.node(), l.nk);
        put(l.w_hat(i) + (1u - wit.path[i - 1]) * l.node(), ws);
    }
    for (uint32_t i = 1; i <= l.ell; ++i) {
        uint32_t base = l.j_block(i);
        z[base] = 1u - wit.path[i - 1];
        z[base + 1] = wit.path[i - 1];
    }
    return z;
}

GsWitness open_gs_witness(const GsLayout& l, const ZqVec& z) {
    require(z.size() == l.dim(), Err::DimensionMismatch, "witness vector size");
    GsWitness wit;
    auto take = [&](uint32_t base, uint32_t len) {
        BitVec v(len);
        for (uint32_t i = 0; i < len; ++i) v[i] = static_cast<uint8_t>(z[base + i] & 1);
        return v;
    };
    wit.path.resize(l.ell);
    for (uint32_t i = 1; i <= l.ell; ++i)
        wit.path[i - 1] = static_cast<uint8_t>(z[l.j_block(i) + 1] & 1);
    wit.x = take(l.x_star(), l.m);
    wit.leaf = take(l.p_star(), l.nk);
    wit.r1 = take(l.r_star(1), l.mE);
    wit.r2 = take(l.r_star(2), l.mE);
    wit.nodes.resize(l.ell - 1);
    for (uint32_t i = 1; i < l.ell; ++i) wit.nodes[i - 1] = take(l.v_star(i), l.nk);
    wit.siblings.resize(l.ell);
    for (uint32_t i = 1; i <= l.ell; ++i)
        wit.siblings[i - 1] = take(l.w_hat(i) + (1u - wit.path[i - 1]) * l.node(), l.nk);
    return wit;
}

bool check_gs_witness(const Params& p, const HashKey& key, const BitVec& root,
                      const TracingPublicKey& tpk, const CiphertextPair& ct,
                      const GsWitness& wit) {
    if (wit.x.size() != p.m || wit.leaf.size() != p.nk() || wit.path.size() != p.ell)
        return false;
    if (wit.siblings.size() != p.ell || wit.nodes.size() + 1 != p.ell) return false;
    if (wit.r1.size() != p.m_E || wit.r2.size() != p.m_E) return false;
    if (hamming_weight(wit.leaf) == 0) return false;

    if (bin_compose(wit.leaf, p) != mat_bits(key.A, wit.x, p.q)) return false;

    BitVec cur = wit.leaf;
    for (uint32_t i = p.ell; i >= 1; --i) {
        const BitVec& sib = wit.siblings[i - 1];
        if (sib.size() != p.nk()) return false;
        BitVec parent = wit.path[i - 1] == 0 ? hash_node(key, cur, sib, p)
                                             : hash_node(key, sib, cur, p);
        if (i >= 2) {
            if (parent != wit.nodes[i - 2]) return false;
        } else if (parent != root) {
            return false;
        }
        cur = std::move(parent);
    }

    auto check_ct = [&](const Ciphertext& c, const ZqMat& P, const BitVec& r) {
        if (r.size() != p.m_E || c.c1 != mat_bits(tpk.B, r, p.q)) return false;
        ZqVec pr = mat_bits(P, r, p.q);
        for (uint32_t j = 0; j < p.ell; ++j)
            pr[j] = uint32_t((pr[j] + uint64_t(p.half_q()) * wit.path[j]) % p.q);
        return c.c2 == pr;
    };
    return check_ct(ct.first, tpk.P1, wit.r1) && check_ct(ct.second, tpk.P2, wit.r2);
}

// ---------------------------------------------------------------------------
// decryption-backed relations

namespace {

struct DigitSystem {
    ZqMat M;
    ZqVec u;
    uint32_t digits = 0;
};

// Rows: per plaintext coordinate j the m_E key-consistency rows, then per j
// one decryption row.  Columns: one block of weighted columns per ternary
// digit of every bounded unknown, then 2*digits zero columns for the symbol
// pad, then extra_cols for the caller.
DigitSystem build_decrypt_system(const Params& p, const ZqMat& B, const ZqMat& P1,
                                 const Ciphertext& ct, const ZqVec& scalar_rhs,
                                 uint32_t extra_cols) {
    const uint32_t q = p.q, n = p.n, ell = p.ell, mE = p.m_E;
    require(B.rows == n && B.cols == mE, Err::DimensionMismatch, "public matrix");
    require(P1.rows == ell && P1.cols == mE, Err::DimensionMismatch, "mask matrix");
    require(ct.c1.size() == n && ct.c2.size() == ell, Err::DimensionMismatch, "ciphertext");
    require(scalar_rhs.size() == ell, Err::DimensionMismatch, "scalar targets");

    const auto wb = decomp_weights(p.beta);
    const auto wy = decomp_weights(p.q_fifth());
    const uint32_t db = decomp_len(p.beta), dy = decomp_len(p.q_fifth());
    const uint32_t digits = ell * n * db + ell * mE * db + ell * dy;
    const uint32_t rows = ell * (mE + 1);

    DigitSystem sys;
    sys.digits = digits;
    sys.M = ZqMat(rows, 3 * digits + extra_cols);
    sys.u = ZqVec(rows, 0);

    uint32_t col = 0;
    for (uint32_t j = 0; j < ell; ++j)
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t t = 0; t < db; ++t, ++col) {
                uint64_t w = wb[t];
                for (uint32_t rr = 0; rr < mE; ++rr)
                    sys.M.at(j * mE + rr, col) = uint32_t(B.at(i, rr) * w % q);
                sys.M.at(ell * mE + j, col) = uint32_t(ct.c1[i] * w % q);
            }
    for (uint32_t j = 0; j < ell; ++j)
        for (uint32_t i = 0; i < mE; ++i)
            for (uint32_t t = 0; t < db; ++t, ++col) sys.M.at(j * mE + i, col) = wb[t] % q;
    for (uint32_t j = 0; j < ell; ++j)
        for (uint32_t t = 0; t < dy; ++t, ++col) sys.M.at(ell * mE + j, col) = wy[t] % q;

    for (uint32_t j = 0; j < ell; ++j) {
        for (uint32_t rr = 0; rr < mE; ++rr) sys.u[j * mE + rr] = P1.at(j, rr);
        sys.u[ell * mE + j] = scalar_rhs[j];
    }
    return sys;
}

TernVec base_digits(const Params& p, const TraceWitness& wit) {
    require(wit.S1.rows == p.n && wit.S1.cols == p.ell, Err::DimensionMismatch, "secret shape");
    require(wit.E1.rows == p.ell && wit.E1.cols == p.m_E, Err::DimensionMismatch, "noise shape");
    require(wit.y.size() == p.ell, Err::DimensionMismatch, "offset count");
    TernVec digits;
    for (uint32_t j = 0; j < p.ell; ++j)
        for (uint32_t i = 0; i < p.n; ++i)
            append_digits(digits, int_decompose(wit.S1.at(i, j), p.beta));
    for (uint32_t j = 0; j < p.ell; ++j)
        for (uint32_t i = 0; i < p.m_E; ++i)
            append_digits(digits, int_decompose(wit.E1.at(j, i), p.beta));
    for (uint32_t j = 0; j < p.ell; ++j)
        append_digits(digits, int_decompose(wit.y[j], p.q_fifth()));
    return digits;
}

TraceWitness recombine_base(const Params& p, const ZqVec& z) {
    const auto wb = decomp_weights(p.beta);
    const auto wy = decomp_weights(p.q_fifth());
    size_t pos = 0;
    auto entry = [&](const std::vector<uint32_t>& w) {
        int64_t v = 0;
        for (uint32_t t = 0; t < w.size(); ++t, ++pos) {
            uint32_t x = z[pos];
            require(x == 0 || x == 1 || x == p.q - 1, Err::OutOfRange, "non-ternary coordinate");
            int32_t d = x == 0 ? 0 : x == 1 ? 1 : -1;
            v += int64_t(w[t]) * d;
        }
        return static_cast<int32_t>(v);
    };
    TraceWitness wit;
    wit.S1 = IntMat(p.n, p.ell);
    wit.E1 = IntMat(p.ell, p.m_E);
    wit.y.resize(p.ell);
    for (uint32_t j = 0; j < p.ell; ++j)
        for (uint32_t i = 0; i < p.n; ++i) wit.S1.at(i, j) = entry(wb);
    for (uint32_t j = 0; j < p.ell; ++j)
        for (uint32_t i = 0; i < p.m_E; ++i) wit.E1.at(j, i) = entry(wb);
    for (uint32_t j = 0; j < p.ell; ++j) wit.y[j] = entry(wy);
    return wit;
}

} // namespace

TraceStatement::TraceStatement(const Params& p, const ZqMat& B, const ZqMat& P1,
                               const Ciphertext& ct, const BitVec& plain)
    : par_(p) {
    require(plain.size() == p.ell, Err::DimensionMismatch, "plaintext length");
    ZqVec rhs(p.ell);
    for (uint32_t j = 0; j < p.ell; ++j) {
        require(plain[j] <= 1, Err::OutOfRange, "plaintext bit");
        rhs[j] = mod_q(int64_t(ct.c2[j]) - int64_t(p.half_q()) * plain[j], p.q);
    }
    auto sys = build_decrypt_system(p, B, P1, ct, rhs, 0);
    digits_ = sys.digits;
    set_system(std::move(sys.M), std::move(sys.u), p.q);
}

SternPerm TraceStatement::sample_perm(Rng& rng) const {
    SternPerm perm;
    perm.perms.push_back(rng.permutation(3 * digits_));
    return perm;
}

std::vector<uint32_t> TraceStatement::perm_lengths() const { return {3 * digits_}; }

std::vector<uint32_t> TraceStatement::coordinate_map(const SternPerm& perm) const {
    require(perm.bits.empty(), Err::DimensionMismatch, "unexpected mask bits");
    require(perm.perms.size() == 1 && perm.perms[0].size() == 3 * digits_, Err::DimensionMismatch,
            "mask shape");
    return perm.perms[0];
}

bool TraceStatement::is_valid(const ZqVec& t) const {
    if (t.size() != 3 * size_t{digits_}) return false;
    return ternary_counts(t, 0, 3 * digits_, digits_, digits_, digits_, par_.q);
}

ZqVec TraceStatement::sample_valid(Rng& rng) const {
    ZqVec t;
    t.reserve(3 * size_t{digits_});
    for (uint32_t i = 0; i < digits_; ++i) t.push_back(1);
    for (uint32_t i = 0; i < digits_; ++i) t.push_back(0);
    for (uint32_t i = 0; i < digits_; ++i) t.push_back(par_.q - 1);
    rng.shuffle(t);
    return t;
}

TraceWitness make_trace_witness(const Params& p, const TracingSecretKey& sk,
                                const Ciphertext& ct, const BitVec& plain) {
    require(sk.S1.rows == p.n && sk.S1.cols == p.ell, Err::DimensionMismatch, "secret shape");
    require(sk.E1.rows == p.ell && sk.E1.cols == p.m_E, Err::DimensionMismatch, "noise shape");
    require(ct.c1.size() == p.n && ct.c2.size() == p.ell, Err::DimensionMismatch, "ciphertext");
    require(plain.size() == p.ell, Err::DimensionMismatch, "plaintext length");
    TraceWitness wit;
    wit.S1 = sk.S1;
    wit.E1 = sk.E1;
    wit.y.resize(p.ell);
    for (uint32_t j = 0; j < p.ell; ++j) {
        int64_t acc = ct.c2[j];
        for (uint32_t i = 0; i < p.n; ++i) acc -= int64_t(ct.c1[i]) * sk.S1.at(i, j);
        acc -= int64_t(p.half_q()) * plain[j];
        wit.y[j] = center(mod_q(acc, p.q), p.q);
    }
    return wit;
}

ZqVec pack_trace_witness(const TraceStatement& st, const TraceWitness& wit) {
    TernVec digits = base_digits(st.params(), wit);
    require(digits.size() == st.digits(), Err::DimensionMismatch, "digit count");
    return ternary_expand(digits, st.params().q);
}

TraceWitness open_trace_witness(const TraceStatement& st, const ZqVec& z) {
    require(z.size() == st.dim(), Err::DimensionMismatch, "witness vector size");
    return recombine_base(st.params(), z);
}

bool check_trace_witness(const Params& p, const ZqMat& B, const ZqMat& P1, const Ciphertext& ct,
                         const BitVec& plain, const TraceWitness& wit) {
    if (wit.S1.rows != p.n || wit.S1.cols != p.ell) return false;
    if (wit.E1.rows != p.ell || wit.E1.cols != p.m_E) return false;
    if (wit.y.size() != p.ell || plain.size() != p.ell) return false;
    if (inf_norm(wit.S1) > p.beta || inf_norm(wit.E1) > p.beta) return false;
    for (int32_t v : wit.y)
        if (std::abs(v) > int32_t(p.q_fifth())) return false;
    for (uint8_t b : plain)
        if (b > 1) return false;

    const uint32_t q = p.q;
    for (uint32_t j = 0; j < p.ell; ++j) {
        for (uint32_t rr = 0; rr < p.m_E; ++rr) {
            int64_t acc = wit.E1.at(j, rr);
            for (uint32_t i = 0; i < p.n; ++i) acc += int64_t(B.at(i, rr)) * wit.S1.at(i, j);
            if (mod_q(acc, q) != P1.at(j, rr)) return false;
        }
        int64_t acc = wit.y[j];
        for (uint32_t i = 0; i < p.n; ++i) acc += int64_t(ct.c1[i]) * wit.S1.at(i, j);
        uint32_t rhs = mod_q(int64_t(ct.c2[j]) - int64_t(p.half_q()) * plain[j], q);
        if (mod_q(acc, q) != rhs) return false;
    }
    return true;
}

DenialStatement::DenialStatement(const Params& p, const ZqMat& B, const ZqMat& P1,
                                 const Ciphertext& ct, const BitVec& denied)
    : par_(p) {
    require(denied.size() == p.ell, Err::DimensionMismatch, "denied identity length");
    ZqVec rhs(p.ell);
    for (uint32_t j = 0; j < p.ell; ++j) {
        require(denied[j] <= 1, Err::OutOfRange, "identity bit");
        rhs[j] = mod_q(int64_t(ct.c2[j]) - int64_t(p.half_q()) * denied[j], p.q);
    }
    auto sys = build_decrypt_system(p, B, P1, ct, rhs, 3 * p.ell - 1);
    digits_ = sys.digits;
    // difference coordinates enter the decryption rows with weight floor(q/2)
    for (uint32_t j = 0; j < p.ell; ++j)
        sys.M.at(p.ell * p.m_E + j, 3 * digits_ + j) = p.half_q();
    set_system(std::move(sys.M), std::move(sys.u), p.q);
}

SternPerm DenialStatement::sample_perm(Rng& rng) const {
    SternPerm perm;
    perm.perms.push_back(rng.permutation(3 * digits_));
    perm.perms.push_back(rng.permutation(3 * par_.ell - 1));
    return perm;
}

std::vector<uint32_t> DenialStatement::perm_lengths() const {
    return {3 * digits_, 3 * par_.ell - 1};
}

std::vector<uint32_t> DenialStatement::coordinate_map(const SternPerm& perm) const {
    require(perm.bits.empty(), Err::DimensionMismatch, "unexpected mask bits");
    require(perm.perms.size() == 2 && perm.perms[0].size() == 3 * digits_ &&
                perm.perms[1].size() == 3 * par_.ell - 1,
            Err::DimensionMismatch, "mask shape");
    std::vector<uint32_t> map(dim());
    const uint32_t base = 3 * digits_;
    for (uint32_t t = 0; t < base; ++t) map[t] = perm.perms[0][t];
    for (uint32_t t = 0; t < 3 * par_.ell - 1; ++t) map[base + t] = base + perm.perms[1][t];
    return map;
}

bool DenialStatement::is_valid(const ZqVec& t) const {
    const uint32_t base = 3 * digits_, ell = par_.ell;
    if (t.size() != size_t{base} + 3 * ell - 1) return false;
    if (!ternary_counts(t, 0, base, digits_, digits_, digits_, par_.q)) return false;
    return ternary_counts(t, base, 3 * ell - 1, ell, ell - 1, ell, par_.q);
}

ZqVec DenialStatement::sample_valid(Rng& rng) const {
    ZqVec head = [&] {
        ZqVec t;
        t.reserve(3 * size_t{digits_});
        for (uint32_t i = 0; i < digits_; ++i) t.push_back(1);
        for (uint32_t i = 0; i < digits_; ++i) t.push_back(0);
        for (uint32_t i = 0; i < digits_; ++i) t.push_back(par_.q - 1);
        rng.shuffle(t);
        return t;
    }();
    ZqVec tail;
    tail.reserve(3 * size_t{par_.ell} - 1);
    for (uint32_t i = 0; i < par_.ell; ++i) tail.push_back(1);
    for (uint32_t i = 0; i < par_.ell; ++i) tail.push_back(par_.q - 1);
    for (uint32_t i = 0; i + 1 < par_.ell; ++i) tail.push_back(0);
    rng.shuffle(tail);
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

DenialWitness make_denial_witness(const Params& p, const TracingSecretKey& sk,
                                  const Ciphertext& ct, const BitVec& plain,
                                  const BitVec& denied) {
    require(denied.size() == p.ell && plain.size() == p.ell, Err::DimensionMismatch,
            "identity length");
    DenialWitness wit;
    wit.base = make_trace_witness(p, sk, ct, plain);
    wit.b.resize(p.ell);
    for (uint32_t j = 0; j < p.ell; ++j)
        wit.b[j] = static_cast<int8_t>(int(plain[j]) - int(denied[j]));
    return wit;
}

ZqVec pack_denial_witness(const DenialStatement& st, const DenialWitness& wit) {
    const Params& p = st.params();
    TernVec digits = base_digits(p, wit.base);
    require(digits.size() == st.digits(), Err::DimensionMismatch, "digit count");
    require(wit.b.size() == p.ell, Err::DimensionMismatch, "difference length");
    ZqVec z = ternary_expand(digits, p.q);
    ZqVec tail = ternary_expand_nonzero(wit.b, p.q);  // CannotExtend when equal identities
    z.insert(z.end(), tail.begin(), tail.end());
    return z;
}

DenialWitness open_denial_witness(const DenialStatement& st, const ZqVec& z) {
    require(z.size() == st.dim(), Err::DimensionMismatch, "witness vector size");
    const Params& p = st.params();
    DenialWitness wit;
    wit.base = recombine_base(p, z);
    wit.b.resize(p.ell);
    const uint32_t base = 3 * st.digits();
    for (uint32_t j = 0; j < p.ell; ++j) {
        uint32_t x = z[base + j];
        require(x == 0 || x == 1 || x == p.q - 1, Err::OutOfRange, "non-ternary coordinate");
        wit.b[j] = static_cast<int8_t>(x == 0 ? 0 : x == 1 ? 1 : -1);
    }
    return wit;
}

bool check_denial_witness(const Params& p, const ZqMat& B, const ZqMat& P1, const Ciphertext& ct,
                          const BitVec& denied, const DenialWitness& wit) {
    if (wit.b.size() != p.ell || denied.size() != p.ell) return false;
    bool nonzero = false;
    for (int8_t d : wit.b) {
        if (d < -1 || d > 1) return false;
        if (d != 0) nonzero = true;
    }
    if (!nonzero) return false;
    const TraceWitness& base = wit.base;
    if (base.S1.rows != p.n || base.S1.cols != p.ell) return false;
    if (base.E1.rows != p.ell || base.E1.cols != p.m_E) return false;
    if (base.y.size() != p.ell) return false;
    if (inf_norm(base.S1) > p.beta || inf_norm(base.E1) > p.beta) return false;
    for (int32_t v : base.y)
        if (std::abs(v) > int32_t(p.q_fifth())) return false;

    const uint32_t q = p.q;
    for (uint32_t j = 0; j < p.ell; ++j) {
        for (uint32_t rr = 0; rr < p.m_E; ++rr) {
            int64_t acc = base.E1.at(j, rr);
            for (uint32_t i = 0; i < p.n; ++i) acc += int64_t(B.at(i, rr)) * base.S1.at(i, j);
            if (mod_q(acc, q) != P1.at(j, rr)) return false;
        }
        int64_t acc = base.y[j] + int64_t(p.half_q()) * wit.b[j];
        for (uint32_t i = 0; i < p.n; ++i) acc += int64_t(ct.c1[i]) * base.S1.at(i, j);
        uint32_t rhs = mod_q(int64_t(ct.c2[j]) - int64_t(p.half_q()) * denied[j], q);
        if (mod_q(acc, q) != rhs) return false;
    }
    return true;
}

} // namespace fdgs
