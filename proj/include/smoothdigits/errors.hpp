#pragma once

#include <stdexcept>
#include <string>

namespace smoothdigits {

/// An argument lies outside the domain of the operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A factor-derived quantity was requested for an integer whose
/// factorization stopped with a composite cofactor.
class IncompleteFactorization : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace smoothdigits
