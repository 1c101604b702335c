#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdgs/encode.hpp"
#include "fdgs/scheme.hpp"

namespace fdgs {

// Every file starts with an 8-byte magic, a format version, and the full
// parameter block, so any file identifies its own profile.  Loaders that
// take expected parameters reject a mismatch with BadProfile.

std::vector<uint8_t> read_file(const std::string& path);          // IoFailure
void write_file(const std::string& path, const std::vector<uint8_t>& bytes);

// canonical body encoders, also used as hash context material
void write_params_body(ByteWriter& w, const Params& p);
Params read_params_body(ByteReader& r);
void write_gpk_body(ByteWriter& w, const GroupPublicKey& gpk);
void write_info_body(ByteWriter& w, const GroupInfo& info);
void write_signature_body(ByteWriter& w, const Signature& sig, uint32_t q);

std::vector<uint8_t> save_pp(const PublicParams& pp);
PublicParams load_pp(const std::vector<uint8_t>& bytes);

std::vector<uint8_t> save_gpk(const GroupPublicKey& gpk);
GroupPublicKey load_gpk(const std::vector<uint8_t>& bytes);

std::vector<uint8_t> save_msk(const Params& p, const BitVec& msk);
BitVec load_msk(const std::vector<uint8_t>& bytes, const Params& p);

std::vector<uint8_t> save_tsk(const Params& p, const TracingSecretKey& tsk);
TracingSecretKey load_tsk(const std::vector<uint8_t>& bytes, const Params& p);

std::vector<uint8_t> save_ukey(const Params& p, const UserKey& key);
UserKey load_ukey(const std::vector<uint8_t>& bytes, const Params& p);

std::vector<uint8_t> save_reg(const Params& p, const RegTable& reg);
RegTable load_reg(const std::vector<uint8_t>& bytes, const Params& p);

// the tree snapshot stores only the leaves; loading rebuilds all levels
std::vector<uint8_t> save_tree(const Params& p, const MerkleTree& tree);
MerkleTree load_tree(const std::vector<uint8_t>& bytes, const PublicParams& pp);

std::vector<uint8_t> save_info(const Params& p, const GroupInfo& info);
GroupInfo load_info(const std::vector<uint8_t>& bytes, const Params& p);

// proof-carrying files parse against the statement their header determines
std::vector<uint8_t> save_signature(const Params& p, const Signature& sig);
Signature load_signature(const std::vector<uint8_t>& bytes, const GroupPublicKey& gpk,
                         const GroupInfo& info);

std::vector<uint8_t> save_trace_result(const Params& p, const TraceResult& res);
TraceResult load_trace_result(const std::vector<uint8_t>& bytes, const GroupPublicKey& gpk,
                              const Signature& sig);

std::vector<uint8_t> save_denial(const Params& p, uint32_t denied_uid, const NizkProof& proof);
std::pair<uint32_t, NizkProof> load_denial(const std::vector<uint8_t>& bytes,
                                           const GroupPublicKey& gpk, const Signature& sig);

} // namespace fdgs
