#pragma once

#include <stdexcept>
#include <string>

namespace hdisp {

enum class ErrorKind {
  DescriptorMismatch,
  NotAUnit,
  EnumerationTooLarge,
  TruncationUnderflow,
  NotInIdeal,
  UnsupportedCharacteristic,
  TypeMismatch,
  NotInGroup,
  NeedsResidueNormalization,
  UnsupportedType,
  BudgetExceeded,
  Precondition,
  Schema,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace hdisp
