#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hdisk {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation point outside the open unit disk (or outside a stated range).
class DomainError : public Error {
public:
    using Error::Error;
};

// A division / log / pow node hit a singular base; the message names the node.
class SingularityError : public Error {
public:
    SingularityError(const std::string& node, std::complex<double> at)
        : Error("singular base in '" + node + "' near z=(" + std::to_string(at.real()) +
                "," + std::to_string(at.imag()) + ")"),
          node_(node), at_(at) {}
    const std::string& node() const { return node_; }
    std::complex<double> at() const { return at_; }

private:
    std::string node_;
    std::complex<double> at_;
};

// |w(z)| >= 1 or J_f(z) <= 0 observed at an evaluation point.
class NotSensePreserving : public Error {
public:
    using Error::Error;
};

// Dilatation left the disk where a Schwarz-Pick margin was requested.
class NotSelfMap : public Error {
public:
    using Error::Error;
};

// Bad parameter (|lambda| != 1, len outside (0,1], ...).
class ArgError : public Error {
public:
    using Error::Error;
};

// The two computational routes to S_f disagreed beyond tolerance.
class InternalMismatch : public Error {
public:
    using Error::Error;
};

// Power-series oracle could not bound its tail.
class TailError : public Error {
public:
    using Error::Error;
};

// Operation refuses to run (e.g. ||w|| estimate too close to 1).
class NotApplicable : public Error {
public:
    using Error::Error;
};

} // namespace hdisk
