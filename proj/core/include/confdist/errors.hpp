#pragma once

#include <stdexcept>
#include <string>

namespace confdist {

// Argument outside the mathematical domain of a function (negative, NaN, inf).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Malformed user-facing input: unsorted grids, bad configuration values.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A root-finding target could not be bracketed, or an iteration did not converge.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace confdist
