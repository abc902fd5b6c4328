#pragma once

#include <stdexcept>
#include <string>

namespace kanlim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define KANLIM_DECLARE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(what) {}          \
    const char* kind() const noexcept override { return #Name; }     \
  }

KANLIM_DECLARE_ERROR(InvalidScalar);
KANLIM_DECLARE_ERROR(MapNotWellDefined);
KANLIM_DECLARE_ERROR(PrimeMismatch);
KANLIM_DECLARE_ERROR(CompositionError);
KANLIM_DECLARE_ERROR(FlatnessViolation);
KANLIM_DECLARE_ERROR(InvalidComplex);
KANLIM_DECLARE_ERROR(NotAPoset);
KANLIM_DECLARE_ERROR(ElementNotFound);
KANLIM_DECLARE_ERROR(NotMonotone);
KANLIM_DECLARE_ERROR(ShapeMismatch);
KANLIM_DECLARE_ERROR(NotInL);
KANLIM_DECLARE_ERROR(Unsupported);
KANLIM_DECLARE_ERROR(InvalidInput);

#undef KANLIM_DECLARE_ERROR

}  // namespace kanlim
