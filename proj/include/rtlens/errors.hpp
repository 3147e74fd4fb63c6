#pragma once

#include <stdexcept>
#include <string>

namespace rtlens {

/// Base class for all rtlens errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector/matrix dimension mismatch.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Arithmetic between cyclotomic numbers of different orders.
class OrderMismatchError : public Error {
public:
    using Error::Error;
};

/// Exact division by zero (field inverse of 0, or Q(0) = 0 in a quotient).
class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// galois(x, k) with gcd(k, N) != 1.
class InvalidAutomorphismError : public Error {
public:
    using Error::Error;
};

/// Order N rejected by the admissibility conditions (parity, size, divisibility).
class InvalidOrderError : public Error {
public:
    using Error::Error;
};

/// Order accepted by the admissibility conditions but with Q(0) = 0, so the
/// normalized invariants F and nabla do not exist.  Detected before dividing.
class DegenerateOrderError : public Error {
public:
    using Error::Error;
};

/// Lens-space parameters violating 2 <= m, 0 < n < m, gcd(m, n) = 1.
class InvalidLensError : public Error {
public:
    using Error::Error;
};

/// Requested computation exceeds the configured state-space budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

} // namespace rtlens
