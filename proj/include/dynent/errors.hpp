#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dynent {

/// Base class of every error raised by the library. `category()` is a short
/// machine-readable tag that the command line tool echoes on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

#define DYNENT_DEFINE_ERROR(Name, tag)                                    \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(tag, what) {}          \
  };

DYNENT_DEFINE_ERROR(InvalidStateError, "invalid-state")
DYNENT_DEFINE_ERROR(StructureError, "structure")
DYNENT_DEFINE_ERROR(BasisError, "basis")
DYNENT_DEFINE_ERROR(DomainError, "domain")
DYNENT_DEFINE_ERROR(RangeError, "range")
DYNENT_DEFINE_ERROR(GeometryError, "geometry")
DYNENT_DEFINE_ERROR(IntegratorError, "integrator-step-too-large")
DYNENT_DEFINE_ERROR(ConvergenceError, "convergence")
DYNENT_DEFINE_ERROR(NumericError, "numeric")
DYNENT_DEFINE_ERROR(ResourceError, "resource")
DYNENT_DEFINE_ERROR(InputError, "input")
DYNENT_DEFINE_ERROR(ConfigError, "config")
DYNENT_DEFINE_ERROR(IoError, "io")

#undef DYNENT_DEFINE_ERROR

}  // namespace dynent
