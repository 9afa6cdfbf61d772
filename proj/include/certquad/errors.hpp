#ifndef CERTQUAD_ERRORS_HPP
#define CERTQUAD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace certquad {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed expression source.  `offset` is the byte position of the
// first offending character.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

// Evaluation left the function's natural domain (log at t<=0, division
// by zero, sqrt of a negative, derivative of sqrt at 0, ...).
struct DomainError : Error {
    DomainError(const std::string& what, double where)
        : Error(what + " at t=" + std::to_string(where)), where(where) {}
    double where;
};

// Jet order above the configured cap.
struct OrderOverflow : Error {
    using Error::Error;
};

// Exact (rational) evaluation requested for a tree containing
// non-polynomial nodes.
struct NotExactCapable : Error {
    using Error::Error;
};

// The reference integrator hit its depth cap before meeting tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

// A bound was requested whose convexity/concavity hypothesis failed the
// grid check; carries the witness point.
struct HypothesisViolation : Error {
    HypothesisViolation(const std::string& what, double witness)
        : Error(what + " (witness t=" + std::to_string(witness) + ")"), witness(witness) {}
    double witness;
};

}  // namespace certquad

#endif
