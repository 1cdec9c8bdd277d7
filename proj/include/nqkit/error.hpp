#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nqkit {

// Base of every error the library raises.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `position` is a byte offset into the parsed text.
class ParseError : public Error {
public:
  ParseError(const std::string &message, std::size_t position)
      : Error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Name not present in an alphabet.
class UnknownGenerator : public Error {
public:
  UnknownGenerator(const std::string &name, std::size_t position)
      : Error("unknown generator '" + name + "' (at offset " +
              std::to_string(position) + ")"),
        name_(name), position_(position) {}

  const std::string &name() const noexcept { return name_; }
  std::size_t position() const noexcept { return position_; }

private:
  std::string name_;
  std::size_t position_;
};

class AlphabetMismatch : public Error {
public:
  AlphabetMismatch() : Error("words are over different alphabets") {}
};

// Precondition violated by the caller (bad k, empty list, index out of range).
class DomainError : public Error {
public:
  using Error::Error;
};

// A configured resource budget was hit; the computation was abandoned.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

// An internal invariant failed. Always a bug.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace nqkit
