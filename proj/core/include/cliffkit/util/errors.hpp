#pragma once

#include <stdexcept>
#include <string>

namespace cliff {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands over different prime fields (or Q vs F_p) were combined.
struct CharacteristicMismatch : Error {
  CharacteristicMismatch() : Error("characteristic mismatch") {}
  explicit CharacteristicMismatch(const std::string& what) : Error(what) {}
};

// A documented precondition does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

struct SupportCollision : Error {
  using Error::Error;
};

struct NoRootInField : Error {
  using Error::Error;
};

struct UnstableDimension : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct SamplingExhausted : Error {
  using Error::Error;
};

// Something that should be impossible if the engine is correct.
struct InternalError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace cliff
