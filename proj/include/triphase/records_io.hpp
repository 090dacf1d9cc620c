#pragma once

#include <string>
#include <vector>

#include "triphase/experiment.hpp"

// Plain-text forms of fringe data. CSV columns are
//   delta_rad,p_plus,p_minus     (probabilities)
//   delta_rad,n_plus,n_minus     (counts)
// JSON output is an array of objects with the same keys. Floating values
// carry 12 significant digits; output is byte-stable for identical input.

namespace triphase {

// Formats one double with 12 significant digits ("%.12g").
std::string format_sig12(double x);

std::string records_to_csv(const std::vector<FringeRecord>& records);
std::string records_to_csv(const std::vector<CountRecord>& records);

std::string records_to_json(const std::vector<FringeRecord>& records);
std::string records_to_json(const std::vector<CountRecord>& records);

}  // namespace triphase
