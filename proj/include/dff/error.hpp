#pragma once

#include <stdexcept>
#include <string>

namespace dff {

enum class ErrorKind {
  kParse,
  kNonCanonicalDomain,
  kDuplicateBreakpoint,
  kInvalidBreakpoint,
  kOutOfDomain,
  kSideUnavailable,
  kMissingGridPoint,
  kAlphaOutOfRange,
  kInnerDiscontinuous,
  kBadInterval,
  kVertexNotInFace,
  kNotMaximal,
  kUncoveredInterval,
  kZeroPerturbation,
  kUnsupportedRepresentation,
  kLambdaOutOfRange,
  kNotMinimal,
  kBadQ,
  kInfeasible,
  kBadParameter,
  kUnknownName,
  kIo,
};

const char* to_string(ErrorKind k) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dff
