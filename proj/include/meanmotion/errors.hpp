#pragma once

#include <stdexcept>
#include <string>

namespace meanmotion {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

#define MEANMOTION_ERROR(Name, Kind)                              \
  class Name : public Error {                                     \
   public:                                                        \
    using Error::Error;                                           \
    const char* kind() const noexcept override { return Kind; }   \
  };

MEANMOTION_ERROR(ArgumentError, "argument")
MEANMOTION_ERROR(DegenerateInputError, "degenerate-input")
MEANMOTION_ERROR(MembershipError, "membership")
MEANMOTION_ERROR(InternalConsistencyError, "internal-consistency")
MEANMOTION_ERROR(SingularContourError, "singular-contour")
MEANMOTION_ERROR(EndpointZeroError, "endpoint-zero")
MEANMOTION_ERROR(TrackingError, "tracking")
MEANMOTION_ERROR(PreconditionError, "precondition")
MEANMOTION_ERROR(MalformedRationalError, "malformed-rational")
MEANMOTION_ERROR(LoadError, "load")

#undef MEANMOTION_ERROR

}  // namespace meanmotion
