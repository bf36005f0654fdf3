#pragma once

#include <stdexcept>
#include <string>

namespace inv {

enum class ErrorKind {
  UnbalancedBracket,
  IllegalCharacter,
  InvalidStructure,
  TooManyFamilies,
  LengthMismatch,
  ArcNotInStructure,
  OutOfRange,
  IncompatibleInput,
  IllegalNucleotide,
  SizeGuard,
  InvalidConfig,
};

const char* to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported through this type.
/// `position` is the 1-based offending position when one exists, else 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int position = 0)
      : std::runtime_error(message), kind_(kind), position_(position) {}

  ErrorKind kind() const noexcept { return kind_; }
  int position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  int position_;
};

}  // namespace inv
