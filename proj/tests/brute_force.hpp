// Test-only oracle: enumerate every bijection with std::next_permutation and
// check difference-label distinctness with a std::set. Deliberately
// independent of the library's verifier and search paths; practical up to
// about 8 vertices (exists_gdl bails out on the first hit).
#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "gdl/core.hpp"

namespace oracle {

inline bool distinct_difference_labels(const gdl::CircuitFamily& fam,
                                       const std::vector<int>& labels) {
  std::set<int> seen;
  for (const auto& arc : fam.arcs())
    if (!seen.insert(labels[arc.head] - labels[arc.tail]).second) return false;
  return true;
}

inline std::vector<std::vector<int>> all_gdls(const gdl::CircuitFamily& fam) {
  std::vector<int> perm(fam.total_vertices());
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    if (distinct_difference_labels(fam, perm)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline bool exists_gdl(const gdl::CircuitFamily& fam) {
  std::vector<int> perm(fam.total_vertices());
  std::iota(perm.begin(), perm.end(), 1);
  do {
    if (distinct_difference_labels(fam, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Integer partitions of every m in [2, max_total] into parts >= 2, each in
// nondecreasing part order; families ordered by total then lexicographically.
inline std::vector<std::vector<int>> all_families_up_to(int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> parts;
  for (int total = 2; total <= max_total; ++total) {
    auto rec = [&](auto&& self, int remaining, int min_part) -> void {
      if (remaining == 0) {
        out.push_back(parts);
        return;
      }
      for (int p = min_part; p <= remaining; ++p) {
        if (remaining - p == 1) continue;  // would strand a length-1 part
        parts.push_back(p);
        self(self, remaining - p, p);
        parts.pop_back();
      }
    };
    rec(rec, total, 2);
  }
  return out;
}

}  // namespace oracle
