#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace supergrass {

// Base for every error raised by the library. Arithmetic overflow of the
// scalar type surfaces separately as std::overflow_error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncationMismatch : public Error {
 public:
  TruncationMismatch(int lhs, int rhs)
      : Error("truncation mismatch: N=" + std::to_string(lhs) + " vs N=" + std::to_string(rhs)),
        lhs_(lhs),
        rhs_(rhs) {}
  int lhs() const noexcept { return lhs_; }
  int rhs() const noexcept { return rhs_; }

 private:
  int lhs_;
  int rhs_;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnverifiedMap : public Error {
 public:
  UnverifiedMap() : Error("endomorphism has not passed verify_relations") {}
};

class NotAnInvolution : public Error {
 public:
  NotAnInvolution() : Error("endomorphism is not an involution") {}
  explicit NotAnInvolution(int index)
      : Error("endomorphism is not an involution: phi(phi(e" + std::to_string(index) + ")) != e" +
              std::to_string(index)) {}
};

// A constructor input broke one of the named conditions of its recipe.
class SpecViolation : public Error {
 public:
  SpecViolation(std::string condition, const std::string& detail)
      : Error("spec violation [" + condition + "]: " + detail), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

// Text or JSON input did not match its schema. path() names the offending
// location, e.g. "/terms/2/coef".
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& detail)
      : Error(path.empty() ? detail : path + ": " + detail), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace supergrass
