#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fdgs/errors.hpp"
#include "fdgs/linalg.hpp"

namespace fdgs {

// Canonical byte encoding used by every file format and every hash input:
//   - integers little-endian, fixed width where stated;
//   - residue vectors: 4-byte length, then per-entry residues at the minimal
//     byte width for the given modulus (2 bytes for q = 12289);
//   - bit vectors: 4-byte bit count, then bits packed 8 per byte, LSB first;
//   - matrices: 4-byte rows, 4-byte cols, then entries row-major at minimal
//     width.
// The encoding is bijective given the modulus, so equal bytes == equal values.

inline uint32_t residue_width(uint32_t q) {
    uint32_t w = 1, top = 0xFF;
    while (q - 1 > top) {
        ++w;
        top = (top << 8) | 0xFF;
    }
    return w;
}

class ByteWriter {
public:
    const std::vector<uint8_t>& bytes() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }
    size_t size() const { return buf_.size(); }

    void u8(uint8_t v) { buf_.push_back(v); }
    void u32(uint32_t v);
    void u64(uint64_t v);
    void raw(std::span<const uint8_t> data);
    void fixed(uint64_t v, uint32_t width);

    void zq_vec(const ZqVec& v, uint32_t q);
    void zq_mat(const ZqMat& m, uint32_t q);
    void bit_vec(const BitVec& v);
    void int_mat(const IntMat& m);  // offset-encoded signed entries
    void str(const std::string& s);

private:
    std::vector<uint8_t> buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

    bool done() const { return pos_ == data_.size(); }
    size_t remaining() const { return data_.size() - pos_; }

    uint8_t u8();
    uint32_t u32();
    uint64_t u64();
    std::vector<uint8_t> raw(size_t len);
    uint64_t fixed(uint32_t width);

    ZqVec zq_vec(uint32_t q);
    ZqMat zq_mat(uint32_t q);
    BitVec bit_vec();
    IntMat int_mat();
    std::string str();

private:
    void need(size_t n) const {
        require(pos_ + n <= data_.size(), Err::Malformed, "truncated input");
    }
    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

} // namespace fdgs
