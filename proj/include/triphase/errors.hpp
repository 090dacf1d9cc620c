#pragma once

#include <stdexcept>
#include <string>

namespace triphase {

// Base class of all typed errors raised by the library. Domain violations
// never produce NaN results; they throw one of the subtypes below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside its documented range (e.g. s1_0 not in (0, pi/2)).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

// The requested triangle has two vertices on the same ray.
class DegenerateTriangle : public Error {
 public:
  using Error::Error;
};

// Vertex angles cannot be extracted (vertex collinear or orthogonal to the
// first basis ray, so eta or xi is undefined).
class UndefinedDecomposition : public Error {
 public:
  using Error::Error;
};

// Endpoint overlap handed to the geodesic interpolator is not real,
// positive and strictly inside (0, 1). Caller must re-gauge first.
class InvalidOverlap : public Error {
 public:
  using Error::Error;
};

// The phase of a (near-)zero complex amplitude was requested.
class UndefinedPhase : public Error {
 public:
  using Error::Error;
};

// A scalar argument (arc length, channel index, step count) is out of range.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// An element sequence does not return port 1 to itself, so no single
// return amplitude exists.
class NotCyclic : public Error {
 public:
  using Error::Error;
};

// The sinusoid fit is singular: too few or badly placed phase settings,
// or vanishing visibility.
class IllConditionedFit : public Error {
 public:
  using Error::Error;
};

// Internal cross-check failed. Indicates a numerical-consistency problem
// rather than bad user input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace triphase
