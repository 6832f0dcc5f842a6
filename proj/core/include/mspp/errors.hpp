#pragma once

#include <stdexcept>
#include <string>

namespace mspp {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched or impossible tensor/parameter extents.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Element count would overflow the index type.
class SizeError : public Error {
public:
  using Error::Error;
};

/// Argument outside the operation's domain (bad label, epsilon <= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed file contents; message carries the byte offset when known.
class FormatError : public Error {
public:
  using Error::Error;
};

/// Non-finite values or a numerically impossible solve.
class NumericError : public Error {
public:
  using Error::Error;
};

/// Invalid spec/config; message lists every violated constraint.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// API misuse, e.g. backward with a cache from a different forward.
class ContractError : public Error {
public:
  using Error::Error;
};

} // namespace mspp
