// Exhaustive backtracking search for gdls: the existence oracle and the
// non-existence certifier. One pruned DFS kernel drives both a serial
// reference path and an OpenMP frontier-split path; results agree on
// existence, and in canonical mode both return the lexicographically
// smallest labeling.
#pragma once

#include <cstdint>
#include <optional>

#include "gdl/core.hpp"

namespace gdl {

struct SearchBudget {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0.0;     // 0 = unlimited
  bool canonical = false;       // return the lexicographically smallest gdl
};

// Constrains difference-label magnitudes: none above max_magnitude, and at
// most max_count_at_limit arcs exactly at it.
struct MagnitudeProfile {
  int max_magnitude = 0;
  int max_count_at_limit = 1;
};

struct SearchOptions {
  bool use_symmetry = true;  // fix circuit rotations + equal-length order
  bool parallel = false;
  int threads = 0;               // 0 = OpenMP default
  bool allow_unbounded = false;  // permit no-budget search beyond 12 vertices
};

// Depth-first assignment in canonical vertex order, pruning on label reuse,
// difference-label reuse, and the optional magnitude profile. Returns Gdl on
// first success (lex-smallest under canonical), NoGdlExhaustive when the
// symmetry-reduced space is exhausted, Timeout otherwise.
Certificate search_gdl(const CircuitFamily& family, const SearchBudget& budget,
                       const std::optional<MagnitudeProfile>& profile = {},
                       const SearchOptions& options = {});

// Unlimited, symmetry-reduced, serial search; guarded to <= 12 vertices
// unless explicitly overridden.
Certificate certify_nonexistence(const CircuitFamily& family,
                                 bool override_guard = false);

}  // namespace gdl
