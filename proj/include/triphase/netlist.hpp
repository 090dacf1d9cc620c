#pragma once

#include <string>

#include "triphase/optics.hpp"

// JSON netlist form of an ElementSequence:
//   {"label": "...",
//    "elements": [
//      {"kind": "BS12", "channels": [1,2],
//       "phi_t": <rad>, "theta": <rad>, "phi_r": <rad>},
//      ...,
//      {"kind": "Phase", "channels": [1,2,3], "deltas": [d1, d2, d3]}]}
// All angles are radians. Field names are stable.

namespace triphase {

// Serializes with 12 significant digits per numeric field.
std::string netlist_to_json(const ElementSequence& seq);

// Parses and validates kinds, channel lists and value ranges.
// Throws InvalidParams on malformed input.
ElementSequence netlist_from_json(const std::string& text);

}  // namespace triphase
