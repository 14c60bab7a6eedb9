#pragma once

#include <stdexcept>
#include <string>

namespace skytrace {

enum class ErrorCode {
  UnknownAttribute,
  EmptySeries,
  InvalidWindow,
  NoPosition,
  DegenerateTrajectory,
  LatitudeOutOfRange,
  InvalidDomain,
  InvalidConfig,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace skytrace
