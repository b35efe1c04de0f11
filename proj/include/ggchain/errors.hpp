#pragma once

#include <stdexcept>

namespace ggchain {

// Input outside the mathematical domain of an operation (tau, indices, sizes).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A hyperbolic argument would leave the range of binary64.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// A factorization met a pivot <= 0.
class NotPositiveDefinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Too few usable points for a regression.
class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ggchain
