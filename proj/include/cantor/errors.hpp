#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cantor {

// All library failures carry a short machine-readable code alongside the
// human-readable message; the CLI maps codes to its error schema.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// Rejected preconditions and malformed values.
class InvalidInput : public Error {
public:
  using Error::Error;
};

// A windowed stabilization scan ran out of budget without settling.
class Inconclusive : public Error {
public:
  using Error::Error;
};

// A work or memory guard tripped (factorization budget, grid size, ...).
class LimitExceeded : public Error {
public:
  using Error::Error;
};

}  // namespace cantor
