#pragma once

#include <stdexcept>
#include <string>

namespace raman {

/// Integration or analysis produced a value that cannot be trusted
/// (non-finite state, commutator bound violated, degenerate norm).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user-facing input: out-of-range parameter, unknown key, conflicting flags.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace raman
