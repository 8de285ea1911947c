#pragma once

#include <stdexcept>
#include <string>

namespace gbv {

// Exit codes are part of the CLI contract.
class Error : public std::runtime_error {
 public:
  Error(std::string code, int exit_code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)), exit_code_(exit_code) {}
  const std::string& code() const { return code_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string code_;
  int exit_code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error("validation", 2, what) {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what) : Error("cap_exceeded", 3, what) {}
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error("invariant", 4, what) {}
};

}  // namespace gbv
