/* Copyright (c) 2026 heatmargin contributors. All rights reserved.
 * See the LICENSE file for terms and conditions. */

#pragma once

#include <stdexcept>
#include <string>

namespace heatmargin {

// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A value that must be present (samples, probabilities, records) is absent.
struct EmptyData : Error {
  using Error::Error;
};

// A numeric argument violates its domain (non-finite, wrong sign, ...).
struct InvalidValue : Error {
  using Error::Error;
};

// Two distributions on incompatible grids were combined.
struct GridMismatch : Error {
  using Error::Error;
};

// A probability argument lies outside [0, 1].
struct InvalidProbability : Error {
  using Error::Error;
};

// A fleet with no units was used where capacity is required.
struct EmptyFleet : Error {
  using Error::Error;
};

// A time series violates its structural invariants.
struct InvalidSeries : Error {
  using Error::Error;
};

// The requested quantity is undefined for the given configuration.
struct NotApplicable : Error {
  using Error::Error;
};

// A parameter block fails validation.
struct InvalidParams : Error {
  using Error::Error;
};

// Two series that must share timestamps or dates do not.
struct AlignmentError : Error {
  using Error::Error;
};

// The regressor has no variation, so no slope can be estimated.
struct DegenerateRegressor : Error {
  using Error::Error;
};

// A capacity quota names a technology absent from the unit pool.
struct MissingTechnology : Error {
  using Error::Error;
};

// Input data covers no complete evaluation window.
struct DataCoverageError : Error {
  using Error::Error;
};

// A file could not be parsed; the message names file, line and field.
struct ParseError : Error {
  using Error::Error;
};

// The scenario configuration is malformed or inconsistent.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace heatmargin
