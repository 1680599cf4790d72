#pragma once

#include <stdexcept>
#include <string>

namespace privrec {

// Base of every error the library raises on bad input or configuration.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent dataset files.
class IngestError : public Error {
 public:
  using Error::Error;
};

// Invalid distance, tree, or synthesis configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Arguments that violate an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace privrec
