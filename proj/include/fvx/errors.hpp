#pragma once

#include <stdexcept>
#include <string>

namespace fvx {

/// Base class of every error raised by the library. Each subclass names one
/// failure mode so callers (and the CLI) can dispatch on the type.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define FVX_DEFINE_ERROR(Name)                                                 \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}       \
  }

FVX_DEFINE_ERROR(DomainError);
FVX_DEFINE_ERROR(ParseError);
FVX_DEFINE_ERROR(NotBinaryPolytope);
FVX_DEFINE_ERROR(NotIntegralPolytope);
FVX_DEFINE_ERROR(UnboundedInput);
FVX_DEFINE_ERROR(EmptyUnion);
FVX_DEFINE_ERROR(EmptyInterval);
FVX_DEFINE_ERROR(AllForbidden);
FVX_DEFINE_ERROR(CardinalityCap);
FVX_DEFINE_ERROR(NoFaceExcludes);
FVX_DEFINE_ERROR(SizeCap);
FVX_DEFINE_ERROR(NotTU);
FVX_DEFINE_ERROR(NonIntegralRhs);
FVX_DEFINE_ERROR(GuardExceeded);
FVX_DEFINE_ERROR(IncompatibleMethod);

#undef FVX_DEFINE_ERROR

} // namespace fvx
