#pragma once

#include <stdexcept>
#include <string>

namespace unitaylor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input; maps to CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Operation called outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Arguments outside the mathematical domain, e.g. a nonpositive radius.
class DomainError : public Error {
 public:
  using Error::Error;
};

class HorizonExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace unitaylor
