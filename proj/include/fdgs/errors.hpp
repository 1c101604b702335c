#pragma once

#include <stdexcept>
#include <string>

namespace fdgs {

enum class Err {
    DimensionMismatch,
    InvalidResidue,
    OutOfRange,
    CannotExtend,
    WitnessRejected,
    InstanceUnsatisfiable,
    ExtractionFailed,
    GroupFull,
    InvalidKey,
    UnknownMember,
    StaleWitness,
    BadProfile,
    InvalidWitness,
    Malformed,
    ResamplingExhausted,
    IoFailure,
};

// Hard contract violations throw; expected negative outcomes (reject, bottom)
// are ordinary return values, never exceptions.
class FdgsError : public std::runtime_error {
public:
    FdgsError(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

inline const char* err_name(Err e) {
    switch (e) {
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::InvalidResidue: return "InvalidResidue";
    case Err::OutOfRange: return "OutOfRange";
    case Err::CannotExtend: return "CannotExtend";
    case Err::WitnessRejected: return "WitnessRejected";
    case Err::InstanceUnsatisfiable: return "InstanceUnsatisfiable";
    case Err::ExtractionFailed: return "ExtractionFailed";
    case Err::GroupFull: return "GroupFull";
    case Err::InvalidKey: return "InvalidKey";
    case Err::UnknownMember: return "UnknownMember";
    case Err::StaleWitness: return "StaleWitness";
    case Err::BadProfile: return "BadProfile";
    case Err::InvalidWitness: return "InvalidWitness";
    case Err::Malformed: return "Malformed";
    case Err::ResamplingExhausted: return "ResamplingExhausted";
    case Err::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

[[noreturn]] inline void fail(Err code, const std::string& what) {
    throw FdgsError(code, std::string(err_name(code)) + ": " + what);
}

inline void require(bool cond, Err code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace fdgs
