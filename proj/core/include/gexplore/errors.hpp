#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gx {

/// Base for everything the library throws on bad input or a broken strategy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

class Disconnected : public Error {
 public:
  Disconnected() : Error("graph is not connected") {}
};

class NoPath : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

/// An explorer named a vertex it may not move to.
class Stuck : public Error {
 public:
  using Error::Error;
};

class PredictionIncomplete : public Error {
 public:
  using Error::Error;
};

class EmptyTrainingSet : public Error {
 public:
  EmptyTrainingSet() : Error("training set is empty") {}
};

}  // namespace gx
