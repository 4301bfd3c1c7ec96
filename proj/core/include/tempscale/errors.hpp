#pragma once

#include <stdexcept>
#include <string>

namespace tempscale {

// Parameter outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// API misuse, e.g. an uninitialized state or mismatched planes.
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateKernelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedPolicyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace tempscale
