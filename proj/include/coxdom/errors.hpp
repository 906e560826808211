#pragma once

#include <stdexcept>

namespace coxdom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed datum or root text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a datum constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotUnitError : public Error {
 public:
  using Error::Error;
};

class NotARootError : public Error {
 public:
  using Error::Error;
};

// A configured cap (steps, layer size, ball size) was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

class NotReducedError : public Error {
 public:
  using Error::Error;
};

class FiniteDihedralError : public Error {
 public:
  using Error::Error;
};

class NotInPlaneError : public Error {
 public:
  using Error::Error;
};

class NotInSubsystemError : public Error {
 public:
  using Error::Error;
};

// An internal cross-check disagreed (e.g. hierarchy level vs. dominated set).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace coxdom
