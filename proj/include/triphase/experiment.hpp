#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "triphase/linalg.hpp"
#include "triphase/optics.hpp"

// Counter-propagating readout of a closed element sequence.
//
// A forward beam enters port 1 and traverses the elements in order; a
// backward beam enters the exit of port 1 and traverses them in reverse.
// Each element may add a dynamical (path length) phase, modeled as one
// scalar e^{i phi} per element that multiplies the element's matrix and is
// identical for both directions. Under the time-reversal convention the
// backward beam sees each element's Hermitian adjoint, so the dynamical
// sums cancel in the interference and the fringe offset is twice the
// geometric phase.

namespace triphase {

// One scalar phase per element; an empty vector means all zeros.
using DynamicalPhases = std::vector<double>;

enum class ReversalConvention {
  // Backward traversal applies each element's Hermitian adjoint (the
  // physical time-reversed optics). Yields -phi_g for the backward beam.
  TimeReversal,
  // Backward traversal applies the transpose instead. Kept for comparison;
  // it returns +phi_g, so the counter-propagating difference vanishes.
  Reciprocal,
};

// Port-1 return amplitude of the forward beam, dynamical phases included.
// Requires the unphased transfer matrix to be cyclic on port 1
// (|M11| > 1 - cyclicity); throws NotCyclic otherwise.
Complex forward_amplitude(const ElementSequence& seq,
                          const DynamicalPhases& dyn);

// Port-1 return amplitude of the counter-propagating beam.
Complex backward_amplitude(
    const ElementSequence& seq, const DynamicalPhases& dyn,
    ReversalConvention convention = ReversalConvention::TimeReversal);

struct FringeRecord {
  double delta = 0.0;    // reference phase setting, radians
  double p_plus = 0.0;   // probability at the bright output
  double p_minus = 0.0;  // probability at the dark output
};

// Interference of the two return beams with an extra reference phase delta
// in the forward arm: p_plus = (1 + cos(2*phi_g + delta)) / 2 and
// p_minus = 1 - p_plus. Dynamical phases cancel.
std::vector<FringeRecord> fringe(const ElementSequence& seq,
                                 const DynamicalPhases& dyn,
                                 const std::vector<double>& deltas);

// Output distribution |column|^2 for light entering input_port (1-based).
std::array<double, 3> port_probabilities(const ElementSequence& seq,
                                         int input_port);

struct CountRecord {
  double delta = 0.0;
  std::uint64_t n_plus = 0;
  std::uint64_t n_minus = 0;
  std::uint64_t n_total() const { return n_plus + n_minus; }
};

// Accumulates single-photon counts: for each setting, photons_per_setting
// independent photons are routed to the bright output with probability
// p_plus(delta). Deterministic for a fixed seed.
std::vector<CountRecord> low_light_counts(const ElementSequence& seq,
                                          const DynamicalPhases& dyn,
                                          const std::vector<double>& deltas,
                                          std::uint64_t photons_per_setting,
                                          std::uint64_t seed);

struct PhaseFit {
  double phase = 0.0;      // fitted offset, (-pi, pi]
  double std_error = 0.0;  // one-sigma uncertainty of phase
  double visibility = 0.0;
};

// Least-squares fit of (1 + V cos(delta + phase)) / 2 to the bright-port
// data. Needs at least three distinct settings spanning at least pi;
// throws IllConditionedFit when the normal equations are singular or the
// visibility is below min_visibility. For a closed triangle circuit the
// fitted phase estimates twice the geometric phase (mod 2*pi).
PhaseFit estimate_phase(const std::vector<FringeRecord>& records);
PhaseFit estimate_phase(const std::vector<CountRecord>& records);

}  // namespace triphase
