#pragma once

#include <stdexcept>
#include <string>

namespace tspadj {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tour construction.
class NotAPermutation : public Error {
public:
    using Error::Error;
};
class TooSmall : public Error {
public:
    using Error::Error;
};

// Union multigraph construction.
class MismatchedInstances : public Error {
public:
    using Error::Error;
};
class IdenticalTours : public Error {
public:
    using Error::Error;
};
class RegularityViolation : public Error {
public:
    using Error::Error;
};
class DisconnectedGraph : public Error {
public:
    using Error::Error;
};

// Matching engines.
class ForcedConflict : public Error {
public:
    using Error::Error;
};
class NotBipartite : public Error {
public:
    using Error::Error;
};
class NotPerfect : public Error {
public:
    using Error::Error;
};

// Instance files.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Exhaustive search bound.
class BoundExceeded : public Error {
public:
    using Error::Error;
};

// A violated internal invariant. Seeing this means a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

// Runtime invariant check that survives NDEBUG builds.
inline void ensure(bool condition, const char* what) {
    if (!condition) throw InternalError(what);
}

}  // namespace tspadj
