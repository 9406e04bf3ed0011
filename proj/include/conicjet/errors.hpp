#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conicjet {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands live in different rings (different primes, integers vs GF(p), or
// different arities).
class RingMismatch : public Error {
public:
    using Error::Error;
};

// exact_div found a nonzero remainder. Inside the pipeline this is a soundness
// violation, never a legal input condition.
class NonDivisible : public Error {
public:
    NonDivisible(std::string remainder, std::size_t remainder_terms)
        : Error("polynomial is not divisible; remainder has " + std::to_string(remainder_terms) +
                " term(s): " + remainder),
          remainder_(std::move(remainder)), remainder_terms_(remainder_terms) {}

    const std::string& remainder() const noexcept { return remainder_; }
    std::size_t remainder_terms() const noexcept { return remainder_terms_; }

private:
    std::string remainder_;
    std::size_t remainder_terms_;
};

class DegenerateConic : public Error {
public:
    using Error::Error;
};

class ResidualSecondDerivative : public Error {
public:
    using Error::Error;
};

class DegreeMismatch : public Error {
public:
    using Error::Error;
};

class SplitMismatch : public Error {
public:
    using Error::Error;
};

class ConstantTooSmall : public Error {
public:
    using Error::Error;
};

class DegenerateTotalDegree : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

// The monomial-pole ansatz needs the Jacobian cubic to be a multiple of
// Z0*Z1*Z2; other configurations are rejected before any expansion.
class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace conicjet
