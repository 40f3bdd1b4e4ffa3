#pragma once

#include <stdexcept>
#include <string>

namespace geewe {

// Malformed instance, parameters, or user input (CLI exit code 1).
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The exact oracle refused the task (CLI exit code 2).
class SolverCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Something that must hold by construction did not (CLI exit code 3).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A weight source answered outside the announced interval.
class AdversaryFault : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
};

class IllegalMove : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
};

class NonTermination : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
};

}  // namespace geewe
