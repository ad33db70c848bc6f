#pragma once

#include <stdexcept>
#include <string>

namespace cdc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates an operation's precondition.
class InvalidParameter : public Error {
   public:
    using Error::Error;
};

class InvalidElement : public Error {
   public:
    using Error::Error;
};

class DivisionByZero : public Error {
   public:
    DivisionByZero() : Error("division by zero in finite field") {}
};

/// Operands belong to different fields.
class IncompatibleField : public Error {
   public:
    using Error::Error;
};

/// Two subspaces live in different ambient spaces (or over different fields).
class IncompatibleSpaces : public Error {
   public:
    using Error::Error;
};

/// An enumeration, construction or pair check would exceed its configured budget.
class BudgetExceeded : public Error {
   public:
    using Error::Error;
};

class RankDeficient : public Error {
   public:
    using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InternalError : public Error {
   public:
    using Error::Error;
};

}  // namespace cdc
