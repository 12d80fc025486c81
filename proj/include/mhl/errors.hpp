#pragma once

#include <stdexcept>
#include <string>

namespace mhl {

// Base of all library errors. The C API maps each subclass to an mhl_status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Exponent argument of e^{(.)} exceeded the overflow guard at some node.
class BlowUpError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Raised by the command-line parser for --help; what() holds the usage text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

}  // namespace mhl
