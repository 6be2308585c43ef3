#pragma once

#include <stdexcept>
#include <string>

namespace qinv {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operand shapes (site count, local dimension, index length) disagree.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Constant coefficient a_{0...0} too small for inverse/log.
class SingularError : public Error {
public:
    using Error::Error;
};

// An argument is outside its supported range (partition size, theta, samples).
class DomainError : public Error {
public:
    using Error::Error;
};

// Qubit-only operation applied to a state with local dimension != 2.
class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

// Malformed state file, index string or partition string.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace qinv
