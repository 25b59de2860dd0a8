#pragma once

#include <stdexcept>
#include <string>

namespace knotfermion {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define KNOTFERMION_ERROR(Name)                                        \
  struct Name : Error {                                                \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

KNOTFERMION_ERROR(NonInvertibleLeadingTerm);
KNOTFERMION_ERROR(BadValuation);
KNOTFERMION_ERROR(PrecisionError);
KNOTFERMION_ERROR(WeightMismatch);
KNOTFERMION_ERROR(CapTooSmall);
KNOTFERMION_ERROR(StabilityRange);
KNOTFERMION_ERROR(StabilityError);
KNOTFERMION_ERROR(FitFailed);
KNOTFERMION_ERROR(SampleAtPole);
KNOTFERMION_ERROR(InvalidArgument);
KNOTFERMION_ERROR(DivisionByZero);

#undef KNOTFERMION_ERROR

}  // namespace knotfermion
