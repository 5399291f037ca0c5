#pragma once

#include <stdexcept>
#include <string>

namespace mahlerkit {

/// A mathematical precondition does not hold: (ND) violated, pole hit,
/// arity mismatch, dependent inputs. Maps to CLI exit code 1.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A certified numeric target could not be met (tail bound unattainable,
/// radius too wide after precision escalation). Maps to CLI exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mahlerkit
