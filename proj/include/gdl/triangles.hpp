// Constructions for unions of directed triangles: the recursive n*C3
// labeling (case split A-D, triangle pairing, conflict detection, conflict
// resolution by flips) and the C4+n*C3 labeling obtained by inserting a
// vertex into one triangle of the (n+1)*C3 construction and replaying its
// flip set.
#pragma once

#include <array>
#include <vector>

#include "gdl/core.hpp"

namespace gdl {

struct CaseParameters {
  int n = 0;      // triangle count, n = 7t + r
  int t = 0;
  int r = 0;      // in [-4, 2]
  int theta = 0;  // ceil((n - t) / 2) = 3t + ceil(r / 2)
  char case_tag = '?';  // A: r in {-4,-2,0}; B: r=2; C: r in {-3,-1}; D: r=1

  bool odd_remainder() const { return r % 2 != 0; }  // cases C and D
  int main_triangles() const {
    return odd_remainder() ? 2 * theta - 1 : 2 * theta;
  }
  int sub_shift() const { return odd_remainder() ? 3 * theta - 1 : 3 * theta; }
  int pair_count() const { return odd_remainder() ? theta : theta + 1; }
};

CaseParameters case_parameters(int n);  // n >= 10

// Signed difference labels of one pairing member, ordered by magnitude.
// triangle == 0 marks a dummy member (D1/D2): its values come from the
// tables and carry no actual arcs.
struct TriangleDls {
  int triangle = 0;  // 1-based id into the main block, 0 = dummy
  int small = 0;
  int medium = 0;
  int big = 0;
  bool is_dummy() const { return triangle == 0; }
};

struct TrianglePairing {
  int index = 0;
  std::array<TriangleDls, 2> member{};
};

// Labels the main triangles T_1..T_{2*theta} (A/B) or T_1..T_{2*theta-1}
// (C/D) by the per-case table formulas and embeds sub_gdl shifted by
// sub_shift(). Requires sub_gdl to be a gdl of t*C3 with at most one arc of
// magnitude 3t-2 and none larger. The result is a bijection onto 1..3n
// (asserted), not necessarily yet a gdl.
Labeling base_table_labeling(const CaseParameters& params,
                             const Labeling& sub_gdl);

// Groups the main triangles into pairs whose small difference labels share a
// magnitude, inserting dummy members exactly where the tables place them.
// Real members are recomputed from the labels and cross-checked against the
// table formulas (mismatch = transcription bug, reported as logic_error).
std::vector<TrianglePairing> classify_pairs(const Labeling& labeling,
                                            const CaseParameters& params);

// source's big difference label equals target's medium one.
struct Conflict {
  int source = 0;
  int target = 0;         // target < source
  int source_member = 0;  // 0/1 within the pairing
  int target_member = 0;
};

struct ConflictRelation {
  std::vector<Conflict> real;   // both sides on real triangles
  std::vector<Conflict> dummy;  // at least one dummy side (bookkeeping)
};

ConflictRelation detect_conflicts(const std::vector<TrianglePairing>& pairings);

struct ResolveOutcome {
  Labeling labeling;
  TriangleStage stage;
};

// Clears all conflicts by flipping pairs: first the chain set J and its
// companion set J', then the remaining source/target stars via the 2*theta/3
// threshold rule, then the case-specific endgame around the first two pairs,
// and for case A with theta = 3t-2 the embedded sub-block when its extreme
// arc collides in sign. Verifies the result and falls back to a bounded
// greedy flip loop if anything remains (counted in the returned stage).
ResolveOutcome resolve_conflicts(const Labeling& labeling,
                                 const std::vector<TrianglePairing>& pairings,
                                 const ConflictRelation& conflicts,
                                 const CaseParameters& params);

struct NC3Result {
  Labeling labeling;
  std::vector<TriangleStage> stages;  // outermost recursion level first
};

// gdl of n*C3 with at most one arc of magnitude 3n-2 and none larger.
// n in [2,9] comes from the catalog; n >= 10 recurses on t.
NC3Result label_n_c3_with_trace(int n);
Labeling label_n_c3(int n);

// gdl of C4+n*C3 (family layout: n triangles then the C4). n = 1 uses the
// fixed C4+odd base, n in [2,8] the catalog, n >= 9 the vertex-insertion
// construction on (n+1)*C3.
NC3Result label_c4_plus_n_c3_with_trace(int n);
Labeling label_c4_plus_n_c3(int n);

}  // namespace gdl
