#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace proxalt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(const std::string& what, Eigen::Index expected, Eigen::Index got)
      : Error(what + ": expected dimension " + std::to_string(expected) + ", got " +
              std::to_string(got)),
        expected_(expected),
        got_(got) {}

  Eigen::Index expected() const { return expected_; }
  Eigen::Index got() const { return got_; }

 private:
  Eigen::Index expected_;
  Eigen::Index got_;
};

/// An iterative routine ran out of iterations before meeting its tolerance.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// The gradient of the smooth loss was not finite at `iterate()`.
class NonFiniteGradient : public Error {
 public:
  explicit NonFiniteGradient(Eigen::VectorXd iterate)
      : Error("non-finite gradient encountered"), iterate_(std::move(iterate)) {}

  const Eigen::VectorXd& iterate() const { return iterate_; }

 private:
  Eigen::VectorXd iterate_;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Malformed input file; `line()` is 1-based.
class ParseError : public IoError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : IoError(path, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace proxalt
