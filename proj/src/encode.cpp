#include "fdgs/encode.hpp"

namespace fdgs {

void ByteWriter::u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
}

void ByteWriter::u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
}

void ByteWriter::raw(std::span<const uint8_t> data) {
    buf_.insert(buf_.end(), data.begin(), data.end());
}

void ByteWriter::fixed(uint64_t v, uint32_t width) {
    for (uint32_t i = 0; i < width; ++i) buf_.push_back(uint8_t(v >> (8 * i)));
}

void ByteWriter::zq_vec(const ZqVec& v, uint32_t q) {
    u32(uint32_t(v.size()));
    uint32_t w = residue_width(q);
    for (uint32_t r : v) {
        require(r < q, Err::InvalidResidue, "entry >= q in encoder");
        fixed(r, w);
    }
}

void ByteWriter::zq_mat(const ZqMat& m, uint32_t q) {
    u32(m.rows);
    u32(m.cols);
    uint32_t w = residue_width(q);
    for (uint32_t r : m.a) {
        require(r < q, Err::InvalidResidue, "entry >= q in encoder");
        fixed(r, w);
    }
}

void ByteWriter::bit_vec(const BitVec& v) {
    u32(uint32_t(v.size()));
    uint8_t acc = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        require(v[i] <= 1, Err::InvalidResidue, "non-bit entry");
        acc |= uint8_t(v[i] << (i % 8));
        if (i % 8 == 7) {
            buf_.push_back(acc);
            acc = 0;
        }
    }
    if (v.size() % 8) buf_.push_back(acc);
}

void ByteWriter::int_mat(const IntMat& m) {
    // entries stored as u32 offset by the recorded minimum
    int64_t lo = 0;
    for (int32_t v : m.a) lo = std::min<int64_t>(lo, v);
    u32(m.rows);
    u32(m.cols);
    u64(uint64_t(-lo));
    for (int32_t v : m.a) u32(uint32_t(int64_t(v) - lo));
}

void ByteWriter::str(const std::string& s) {
    u32(uint32_t(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
}

uint8_t ByteReader::u8() {
    need(1);
    return data_[pos_++];
}

uint32_t ByteReader::u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(data_[pos_++]) << (8 * i);
    return v;
}

uint64_t ByteReader::u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(data_[pos_++]) << (8 * i);
    return v;
}

std::vector<uint8_t> ByteReader::raw(size_t len) {
    need(len);
    std::vector<uint8_t> out(data_.begin() + pos_, data_.begin() + pos_ + len);
    pos_ += len;
    return out;
}

uint64_t ByteReader::fixed(uint32_t width) {
    need(width);
    uint64_t v = 0;
    for (uint32_t i = 0; i < width; ++i) v |= uint64_t(data_[pos_++]) << (8 * i);
    return v;
}

ZqVec ByteReader::zq_vec(uint32_t q) {
    uint32_t len = u32();
    require(len <= 1u << 26, Err::Malformed, "vector length implausible");
    uint32_t w = residue_width(q);
    ZqVec out(len);
    for (auto& r : out) {
        uint64_t v = fixed(w);
        require(v < q, Err::InvalidResidue, "entry >= q in decoder");
        r = uint32_t(v);
    }
    return out;
}

ZqMat ByteReader::zq_mat(uint32_t q) {
    uint32_t rows = u32(), cols = u32();
    require(uint64_t(rows) * cols <= 1u << 26, Err::Malformed, "matrix size implausible");
    uint32_t w = residue_width(q);
    ZqMat out(rows, cols);
    for (auto& r : out.a) {
        uint64_t v = fixed(w);
        require(v < q, Err::InvalidResidue, "entry >= q in decoder");
        r = uint32_t(v);
    }
    return out;
}

BitVec ByteReader::bit_vec() {
    uint32_t len = u32();
    require(len <= 1u << 26, Err::Malformed, "bit vector length implausible");
    BitVec out(len);
    uint8_t acc = 0;
    for (uint32_t i = 0; i < len; ++i) {
        if (i % 8 == 0) acc = u8();
        out[i] = (acc >> (i % 8)) & 1;
    }
    return out;
}

IntMat ByteReader::int_mat() {
    uint32_t rows = u32(), cols = u32();
    require(uint64_t(rows) * cols <= 1u << 26, Err::Malformed, "matrix size implausible");
    int64_t lo = -int64_t(u64());
    IntMat out(rows, cols);
    for (auto& v : out.a) v = int32_t(int64_t(u32()) + lo);
    return out;
}

std::string ByteReader::str() {
    uint32_t len = u32();
    auto b = raw(len);
    return std::string(b.begin(), b.end());
}

} // namespace fdgs
