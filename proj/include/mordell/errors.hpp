#pragma once

#include <stdexcept>
#include <string>

namespace mordell {

/// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DomainTooSmall : Error {
    using Error::Error;
};

struct PerfectSquare : Error {
    using Error::Error;
};

/// Input exceeds the fixed-width fast-path range (radicand or modulus >= 2^62).
struct Overflow : Error {
    using Error::Error;
};

struct PeriodGuardExceeded : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct NotCongruent3Mod4 : Error {
    using Error::Error;
};

struct NotCongruent1Mod4 : Error {
    using Error::Error;
};

/// An exact integer square root was expected but the operand was not square.
/// Reaching this with valid inputs means the library itself is inconsistent.
struct InexactSquareRoot : Error {
    using Error::Error;
};

struct RangeTooLarge : Error {
    using Error::Error;
};

struct CheckpointMismatch : Error {
    using Error::Error;
};

struct CheckpointCorrupt : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

/// A condition that is provably impossible for valid inputs was observed,
/// e.g. the fast and exact verification paths disagree.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace mordell
