#pragma once

#include <stdexcept>
#include <string>

namespace opcalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidDimensionError : public Error {
public:
    using Error::Error;
};

class NonSquareError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class NotHermitianError : public Error {
public:
    using Error::Error;
};

class NotPsdError : public Error {
public:
    using Error::Error;
};

class NotUnitaryError : public Error {
public:
    using Error::Error;
};

class NoConvergenceError : public Error {
public:
    using Error::Error;
};

class InvalidPError : public Error {
public:
    using Error::Error;
};

class KOutOfRangeError : public Error {
public:
    using Error::Error;
};

class NTooSmallError : public Error {
public:
    using Error::Error;
};

class SingularMixError : public Error {
public:
    using Error::Error;
};

class UnknownPropertyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace opcalc
