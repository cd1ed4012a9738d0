#pragma once

#include <stdexcept>
#include <string>

namespace antinspect {

// Base for every error raised by the library. Commands map ConfigError and
// ParseError to exit status 1 and everything else to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class OutOfOrderFrame : public Error {
 public:
  using Error::Error;
};

class MissingImu : public Error {
 public:
  using Error::Error;
};

class MissingLabel : public Error {
 public:
  using Error::Error;
};

class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

}  // namespace antinspect
