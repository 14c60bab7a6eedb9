#include "skytrace/error.hpp"

namespace skytrace {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownAttribute:
      return "UnknownAttribute";
    case ErrorCode::EmptySeries:
      return "EmptySeries";
    case ErrorCode::InvalidWindow:
      return "InvalidWindow";
    case ErrorCode::NoPosition:
      return "NoPosition";
    case ErrorCode::DegenerateTrajectory:
      return "DegenerateTrajectory";
    case ErrorCode::LatitudeOutOfRange:
      return "LatitudeOutOfRange";
    case ErrorCode::InvalidDomain:
      return "InvalidDomain";
    case ErrorCode::InvalidConfig:
      return "InvalidConfig";
  }
  return "Error";
}

}  // namespace skytrace
