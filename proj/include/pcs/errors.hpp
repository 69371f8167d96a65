#pragma once

#include <stdexcept>
#include <string>

namespace pcs {

// Bad user input: malformed files, infeasible parameters, preconditions
// violated by the caller.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal invariant failed. Indicates a bug or a corrupted structure,
// never a user mistake.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A synthesized object did not reproduce the series it was built from.
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A truncation bound was too small to decide the answer.
class InsufficientBound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pcs
