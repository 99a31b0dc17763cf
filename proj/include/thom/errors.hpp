#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable category, e.g. "DegenerateMetric".
  virtual const char* kind() const noexcept { return "Error"; }
};

#define THOM_DECLARE_ERROR(Name)                              \
  class Name : public Error {                                 \
   public:                                                    \
    using Error::Error;                                       \
    const char* kind() const noexcept override { return #Name; } \
  }

THOM_DECLARE_ERROR(InconsistentNormalization);
THOM_DECLARE_ERROR(DegenerateMetric);
THOM_DECLARE_ERROR(DomainError);
THOM_DECLARE_ERROR(MissingBinding);
THOM_DECLARE_ERROR(DimensionMismatch);
THOM_DECLARE_ERROR(NotAntisymmetric);
THOM_DECLARE_ERROR(OddDimension);
THOM_DECLARE_ERROR(GaugeSingular);
THOM_DECLARE_ERROR(DegenerateKernel);
THOM_DECLARE_ERROR(NonRadialTopTerm);
THOM_DECLARE_ERROR(QuadratureDiverged);
THOM_DECLARE_ERROR(ConfigError);
THOM_DECLARE_ERROR(Unsupported);

#undef THOM_DECLARE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  const char* kind() const noexcept override { return "ParseError"; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace thom
