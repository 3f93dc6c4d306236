#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gravidec {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (non-positive mass, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A frequency or parameter lies outside the domain of a model.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Unknown catalog entry or configuration key.
class LookupError : public Error {
public:
  using Error::Error;
};

/// Spectrum level below the quantum vacuum contribution.
class SubVacuumError : public Error {
public:
  using Error::Error;
};

/// A numerical procedure could not produce a result (no bracket, ...).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace gravidec
