#pragma once

#include <stdexcept>
#include <string>

namespace edsm {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Precondition or invariant violation in a library call.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

// Singular or ill-conditioned linear systems.
class NumericError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

// Problems reading an MSR/1 file. `line` is 1-based, 0 when not tied to a line.
class FormatError : public Error {
  public:
    enum class Kind { Malformed, Version, Dimension };

    FormatError(Kind kind, int line, const std::string& what)
        : Error(what), kind_(kind), line_(line) {}

    Kind kind() const { return kind_; }
    int line() const { return line_; }

  private:
    Kind kind_;
    int line_;
};

// Problems in an experiment configuration. `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
  public:
    enum class Kind { Syntax, UnknownKey, Invariant };

    ConfigError(Kind kind, int line, const std::string& what)
        : Error(what), kind_(kind), line_(line) {}

    Kind kind() const { return kind_; }
    int line() const { return line_; }

  private:
    Kind kind_;
    int line_;
};

}  // namespace edsm
