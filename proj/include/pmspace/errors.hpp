#pragma once

#include <stdexcept>
#include <string>

namespace pmspace {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed carrier data: non-square row sets, non-finite entries.
class structural_error : public error {
public:
    using error::error;
};

/// Two operands whose sizes must agree do not.
class dimension_error : public error {
public:
    using error::error;
};

/// An argument violates an operation's precondition.
class domain_error : public error {
public:
    using error::error;
};

/// Rejection sampling failed to produce a value within the attempt budget.
class sampling_error : public error {
public:
    using error::error;
};

/// A file or document could not be parsed into a well-formed value.
class parse_error : public error {
public:
    using error::error;
};

/// An internal invariant that must hold for in-domain input was violated.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace pmspace
