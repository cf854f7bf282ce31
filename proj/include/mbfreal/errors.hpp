#pragma once

#include <stdexcept>

namespace mbfreal {

// Malformed user input: files, command-line values, parsed text.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ArityMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotMonotone : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A witness whose corner value lands exactly on a threshold.
class InvalidWitness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// On-disk state that contradicts the requested operation.
class StateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mbfreal
