#pragma once

#include <stdexcept>
#include <string>

namespace hnls {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define HNLS_DEFINE_ERROR(Name)                                                \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}       \
  }

HNLS_DEFINE_ERROR(InvalidGroupElement);
HNLS_DEFINE_ERROR(GridMismatch);
HNLS_DEFINE_ERROR(NonDecayedBoundary);
HNLS_DEFINE_ERROR(NonFiniteMultiplier);
HNLS_DEFINE_ERROR(ScaleTooSmall);
HNLS_DEFINE_ERROR(BoundaryMassExceeded);
HNLS_DEFINE_ERROR(NonFiniteState);
HNLS_DEFINE_ERROR(TimeOutOfRange);
HNLS_DEFINE_ERROR(LengthMismatch);
HNLS_DEFINE_ERROR(NoConcentration);
HNLS_DEFINE_ERROR(ConfigParse);
HNLS_DEFINE_ERROR(ScenarioUnknown);
HNLS_DEFINE_ERROR(IoError);

#undef HNLS_DEFINE_ERROR

}  // namespace hnls
