#pragma once

// Textual names for functions and measures used by the command line.
//
// Function tags:
//   h0 | h1 | potential | psi0 | psi1 | delta_e
//   char:<r>/<s>          e.g. char:2/2 (integers only on both sides)
//   char:<r>,<s>          e.g. char:3,3/2 (rationals allowed)
//   translate:<tag>:x,y,z
//   scale:<tag>:<num/den>
//   sum:<tag>+<tag>
//   prod:<tag>*<tag>
//
// Measures: "sw" (delta_{a^-1} + delta_{b^-1}), "sw-prob" (its normalization),
// or a path to a JSON file [[[x,y,z], "num/den"], ...].

#include <string_view>

#include "heis/harmonic.hpp"

namespace heis {

/// Throws std::invalid_argument on an unknown or malformed tag.
Function parse_function(std::string_view tag);

Measure resolve_measure(std::string_view name_or_path);

}  // namespace heis
