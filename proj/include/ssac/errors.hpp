#pragma once

#include <stdexcept>
#include <string>

namespace ssac {

/// Base for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (dimension mismatch, bad index, q >= 1/2, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// cost() was asked to evaluate against an empty center set.
class NoCentersError : public Error {
public:
    NoCentersError() : Error("cost requested with an empty center set") {}
};

/// Every D^2 weight is zero while at least one center exists, so there is nothing to sample.
class DegenerateDistributionError : public Error {
public:
    DegenerateDistributionError()
        : Error("degenerate D^2 distribution: every point coincides with a center") {}
};

class InstanceTooLargeError : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace ssac
