#pragma once

#include <stdexcept>
#include <string>

namespace tfid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TFID_DEFINE_ERROR(Name)                          \
  class Name : public Error {                            \
   public:                                               \
    explicit Name(const std::string& what) : Error(what) {} \
  }

TFID_DEFINE_ERROR(DegenerateLattice);
TFID_DEFINE_ERROR(LengthMismatch);
TFID_DEFINE_ERROR(NotADivisor);
TFID_DEFINE_ERROR(UnknownKind);
TFID_DEFINE_ERROR(InvalidParams);
TFID_DEFINE_ERROR(EmptyFamily);
TFID_DEFINE_ERROR(ShapeMismatch);
TFID_DEFINE_ERROR(NotIdentifiable);
TFID_DEFINE_ERROR(DegenerateDiscretization);

#undef TFID_DEFINE_ERROR

}  // namespace tfid
