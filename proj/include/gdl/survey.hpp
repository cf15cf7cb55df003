// Conjecture survey: enumerate every circuit family up to a vertex budget,
// run the planner with search fallback on each, and tabulate the outcomes.
// Any no-gdl row besides C3 and C2+C3 would falsify the conjecture and is
// surfaced separately.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "gdl/core.hpp"
#include "gdl/search.hpp"

namespace gdl {

struct SurveyRow {
  std::vector<int> family;
  std::string status;  // constructed|searched-found|no-gdl|open-timeout|exception
  int max_magnitude = 0;
  double elapsed = 0.0;
};

struct SurveyReport {
  int max_vertices = 0;
  SearchBudget budget;
  std::vector<SurveyRow> rows;  // enumeration order
  std::map<std::string, int> summary;
  std::vector<std::vector<int>> conjecture_counterexamples;
};

// All multisets of circuit lengths (parts >= 2) with total <= max_vertices,
// each exactly once: ordered by total vertices, then lexicographically on
// the nondecreasing length list.
std::vector<std::vector<int>> enumerate_families(int max_vertices);

// jobs = 0 lets OpenMP choose; rows keep enumeration order regardless of
// completion order.
SurveyReport run_survey(int max_vertices, const SearchBudget& budget,
                        int jobs = 0);

}  // namespace gdl
