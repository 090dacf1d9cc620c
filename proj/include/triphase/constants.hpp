#pragma once

// All numerical tolerances used by the library live here so that every
// check references a named constant instead of a scattered literal.

namespace triphase::tol {

// Accepted defect at construction time (unit norm, unitarity).
inline constexpr double construction = 1e-12;

// Accepted defect for values propagated through products of validated
// objects (matrix products, recompositions of element sequences).
inline constexpr double propagated = 1e-11;

// Componentwise bound when a vector is rebuilt from extracted angles.
inline constexpr double recomposition = 1e-10;

// A third vertex closer than this (in 1 - |overlap|) to an existing ray
// makes the triangle degenerate: the connecting geodesic loses uniqueness.
inline constexpr double collinearity_gap = 1e-9;

// Below this modulus the argument of a complex number is meaningless.
inline constexpr double phase_defined = 1e-12;

// An interferometer output is accepted as cyclic when the modulus of the
// port-1 return amplitude exceeds 1 minus this.
inline constexpr double cyclicity = 1e-9;

// Smallest visibility for which a fitted fringe phase is reported.
inline constexpr double min_visibility = 1e-12;

// Cross-route phase discrepancies above this are treated as an internal
// numerical-consistency failure by the command line tool (exit code 3).
inline constexpr double cli_consistency = 1e-6;

}  // namespace triphase::tol
