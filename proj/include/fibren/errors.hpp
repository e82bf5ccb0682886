#pragma once

#include <stdexcept>
#include <string>

namespace fibren {

// Root of all toolkit errors. Rigorous routines abort the enclosing job by
// throwing; a caught error means "no certificate", never a silently wrong
// enclosure.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct OverflowError : Error {
    explicit OverflowError(const std::string& w = "endpoint not representable") : Error(w) {}
};

struct DivisorStraddlesZero : Error {
    explicit DivisorStraddlesZero(const std::string& w = "divisor interval meets zero") : Error(w) {}
};

struct NegativeBase : Error {
    explicit NegativeBase(const std::string& w = "power of an interval with negative part") : Error(w) {}
};

struct DomainViolation : Error {
    explicit DomainViolation(const std::string& w = "argument outside [-1,1]") : Error(w) {}
};

struct RangeViolation : Error {
    explicit RangeViolation(const std::string& w = "inner range not inside [-1,1]") : Error(w) {}
};

struct DegenerateAffine : Error {
    explicit DegenerateAffine(const std::string& w = "affine map with zero-width domain") : Error(w) {}
};

struct NoCertificate : Error {
    explicit NoCertificate(const std::string& w = "contraction certificate failed") : Error(w) {}
};

struct DerivativeVanishes : Error {
    explicit DerivativeVanishes(const std::string& w = "derivative enclosure meets zero") : Error(w) {}
};

struct CombinatoricsBroken : Error {
    explicit CombinatoricsBroken(const std::string& w = "renormalization configuration violated") : Error(w) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& w = "iteration failed to converge") : Error(w) {}
};

struct BranchAmbiguous : Error {
    explicit BranchAmbiguous(const std::string& w = "orbit interval straddles a branch boundary") : Error(w) {}
};

struct PreimageAmbiguous : Error {
    explicit PreimageAmbiguous(const std::string& w = "preimage component undecidable") : Error(w) {}
};

struct NoSpace : Error {
    explicit NoSpace(const std::string& w = "no certified Koebe space") : Error(w) {}
};

struct InconclusiveSign : Error {
    explicit InconclusiveSign(const std::string& w = "sign not certified at maximum refinement") : Error(w) {}
};

struct MissingData : Error {
    explicit MissingData(const std::string& w = "required data file missing") : Error(w) {}
};

struct ShardOutOfRange : Error {
    explicit ShardOutOfRange(const std::string& w = "shard index out of range") : Error(w) {}
};

struct CorruptEndpointFile : Error {
    explicit CorruptEndpointFile(const std::string& w = "left/right endpoint files disagree") : Error(w) {}
};

} // namespace fibren
