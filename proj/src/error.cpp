#include "mpos/error.hpp"

namespace mpos {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotExpanding: return "NotExpanding";
    case Errc::NotAResidueSystem: return "NotAResidueSystem";
    case Errc::MissingZero: return "MissingZero";
    case Errc::InvalidDigitSet: return "InvalidDigitSet";
    case Errc::NotInH: return "NotInH";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::ScaleTooCoarse: return "ScaleTooCoarse";
    case Errc::ScaleContract: return "ScaleContract";
    case Errc::DepthTooLarge: return "DepthTooLarge";
    case Errc::DimensionUnsupported: return "DimensionUnsupported";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mpos
