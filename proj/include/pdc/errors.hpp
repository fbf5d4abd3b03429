#pragma once

#include <stdexcept>
#include <string>

namespace pdc {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input data did not match the expected CSV schema.
struct SchemaError : Error {
  using Error::Error;
};

// Timestamps are off-grid, duplicated, or otherwise inconsistent.
struct AlignmentError : Error {
  using Error::Error;
};

// Too few complete days survived ingestion.
struct EmptyPanel : Error {
  using Error::Error;
};

struct UnknownSeries : Error {
  using Error::Error;
};

struct PeriodOutOfRange : Error {
  using Error::Error;
};

// Fewer samples than an estimator needs.
struct TooFewSamples : Error {
  using Error::Error;
};

struct NonFiniteInput : Error {
  using Error::Error;
};

struct ProbabilityOutOfRange : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

// Two mass sequences combined with different grid steps.
struct StepMismatch : Error {
  using Error::Error;
};

// A discretization grid too coarse to resolve the distribution.
struct StepTooCoarse : Error {
  using Error::Error;
};

struct ZeroBenefit : Error {
  using Error::Error;
};

struct EmptySweep : Error {
  using Error::Error;
};

}  // namespace pdc
