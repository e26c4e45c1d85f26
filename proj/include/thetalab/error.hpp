#pragma once

#include <stdexcept>
#include <string>

namespace thetalab {

/// Malformed or out-of-contract input (bad τ, mismatched dimensions, bad indices).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The truncation radius needed for the requested accuracy exceeds the hard cap.
class IllConditioned : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative search (zero finding) gave up.
class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace thetalab
