#pragma once

#include <stdexcept>
#include <string>

namespace syzlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SYZLAB_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

SYZLAB_DEFINE_ERROR(ZeroInverse);
SYZLAB_DEFINE_ERROR(OrderOutOfRange);
SYZLAB_DEFINE_ERROR(NotASubspace);
SYZLAB_DEFINE_ERROR(SingularMatrix);
SYZLAB_DEFINE_ERROR(BadIndex);
SYZLAB_DEFINE_ERROR(IndexOutOfRange);
SYZLAB_DEFINE_ERROR(DegenerateInstance);
SYZLAB_DEFINE_ERROR(InsufficientPoints);
SYZLAB_DEFINE_ERROR(UnsupportedGenus);
SYZLAB_DEFINE_ERROR(TruncationTooSmall);
SYZLAB_DEFINE_ERROR(NonIntegerResult);
// An internal consistency assertion failed (e.g. a Koszul differential that
// does not square to zero). Never expected on valid input.
SYZLAB_DEFINE_ERROR(InvariantViolation);

#undef SYZLAB_DEFINE_ERROR

}  // namespace syzlab
