/// @file errors.hpp
/// @brief Exception types thrown by the library.

#pragma once

#include <stdexcept>
#include <string>

namespace mvr {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation violates the structural rules (references itself, or its
/// counter does not exceed the counters of its predecessors/anchor).
struct MalformedOperation : Error {
    using Error::Error;
};

/// A traversal met an OpId that is not present in the history.
struct DanglingReference : Error {
    using Error::Error;
};

/// Two OpIdTraces from the same resolution could not be ordered. This is an
/// internal invariant violation: one trace would have to be a prefix of the
/// other, which the SetOp-terminated trace shape rules out.
struct IndistinguishableTraces : Error {
    using Error::Error;
};

/// The redo stack held an operation whose anchor is not a SetOp.
struct CorruptStack : Error {
    using Error::Error;
};

/// A replica was created with an empty identifier.
struct EmptyReplicaId : Error {
    using Error::Error;
};

/// A replica received one of its own operations that it has no record of.
struct OwnOperationEcho : Error {
    using Error::Error;
};

/// A scenario step referenced a replica that was never declared.
struct UnknownReplica : Error {
    using Error::Error;
};

/// The permutation oracle was given more operations than it can enumerate.
struct TooManyOps : Error {
    using Error::Error;
};

/// A scenario or operation document failed to parse or validate. The message
/// names the offending field (and line, for syntax errors).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace mvr
