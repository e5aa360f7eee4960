#pragma once

#include <stdexcept>
#include <string>

namespace mpos {

// Numeric values are part of the C ABI (see mpos.h); append only.
enum class Errc : int {
  NotExpanding = 1,
  NotAResidueSystem = 2,
  MissingZero = 3,
  InvalidDigitSet = 4,
  NotInH = 5,
  SpaceMismatch = 6,
  ScaleTooCoarse = 7,
  ScaleContract = 8,
  DepthTooLarge = 9,
  DimensionUnsupported = 10,
  LengthMismatch = 11,
  InvalidArgument = 12,
  ParseError = 13,
  IoError = 14,
};

/// Stable machine-readable name, e.g. "NotExpanding".
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mpos
