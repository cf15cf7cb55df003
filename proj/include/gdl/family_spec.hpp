// Textual family descriptions: either a comma-separated list of circuit
// lengths ("3,3,4") or terms "k*Cj" / "Cj" joined by '+' ("2*C3+C4").
// Circuit order follows the text. Anything outside the grammar is rejected.
#pragma once

#include <string>

#include "gdl/core.hpp"

namespace gdl {

CircuitFamily parse_family_spec(const std::string& text);

// "C3+2*C2" style rendering used in reports.
std::string family_to_string(const CircuitFamily& family);

}  // namespace gdl
