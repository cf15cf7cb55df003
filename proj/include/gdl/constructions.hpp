// Closed-form gdl constructions: single circuits (four cases by k mod 4),
// the two extension moves (append 2*C4, append one even circuit != C4), the
// fixed bases for the small mixed families, and the planner that composes
// them into a gdl for any covered circuit family.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdl/core.hpp"
#include "gdl/search.hpp"

namespace gdl {

struct SingleCircuitGdl {
  Labeling labeling;
  // Sign of the difference label on the unique magnitude-1 arc; 0 for
  // k in {2, 4}, where both +1 and -1 occur.
  int magnitude1_sign = 0;
};

// gdl of C_k for k = 2 or k >= 4. For k >= 5 the result has exactly one arc
// of magnitude 1 and magnitude1_sign reports its sign (the C_k+C3 base
// needs it). k = 3 -> UnsupportedError.
SingleCircuitGdl label_single_circuit_info(int k);
Labeling label_single_circuit(int k);

// g + 2*C4: old labels shift by 4, the eight new labels surround them so
// every new magnitude exceeds |V_old|. Input must verify as a gdl.
Labeling extend_with_two_c4(const Labeling& g);

// g + C_{2k} for 2k != 4: old labels shift by k; interleaving formulas for
// odd k, adjusted tail for even k >= 8 vertices. New magnitudes exceed
// |V_old|.
Labeling extend_with_even_circuit(const Labeling& g, int two_k);

struct FixedBaseKind {
  enum class Tag { TwoC2PlusC3, C4PlusOdd, CkPlusC3, TwoC4PlusC3 };
  Tag tag = Tag::TwoC2PlusC3;
  int k = 0;  // odd circuit length (C4PlusOdd) or circuit length (CkPlusC3)

  static FixedBaseKind two_c2_plus_c3() { return {Tag::TwoC2PlusC3, 0}; }
  static FixedBaseKind c4_plus_odd(int odd) { return {Tag::C4PlusOdd, odd}; }
  static FixedBaseKind ck_plus_c3(int k) { return {Tag::CkPlusC3, k}; }
  static FixedBaseKind two_c4_plus_c3() { return {Tag::TwoC4PlusC3, 0}; }
};

// Verified gdls of 2C2+C3 (family {2,2,3}), C4+C_odd for odd >= 3 (family
// {4,odd}), C_k+C3 for k >= 5 (family {k,3}), and 2C4+C3 (family {4,4,3}).
Labeling label_fixed_base(const FixedBaseKind& kind);

struct ConstructionPlan {
  enum class Base {
    Empty,
    SingleCircuit,
    TwoC2PlusC3,
    C4PlusOdd,
    CkPlusC3,
    TwoC4PlusC3,
    NC3,
    C4PlusNC3,
  };
  struct Extension {
    bool add_two_c4 = false;
    int even_length = 0;  // when !add_two_c4
  };

  Base base = Base::Empty;
  int base_param = 0;  // circuit length or triangle count, as applicable
  std::vector<Extension> extensions;

  std::string base_name() const;
};

// True exactly for the two known non-gdl families, C3 and C2+C3.
bool is_exception_family(const CircuitFamily& family);

// At most one odd circuit, or no odd circuit of length >= 5.
bool within_constructive_coverage(const CircuitFamily& family);

// Deterministic plan for any covered, non-exception family; nullopt
// otherwise. Applying base then extensions reproduces the input multiset.
std::optional<ConstructionPlan> plan_family(const CircuitFamily& family);

struct PlanExecution {
  Labeling labeling;  // in the plan's own circuit order
  ConstructionTrace trace;
};

PlanExecution execute_plan(const ConstructionPlan& plan);

struct PlanOptions {
  bool search_fallback = false;  // families outside coverage go to search
  SearchBudget budget{};
  bool parallel_search = false;
};

// Exceptions -> Unsupported with the exception marker; covered families ->
// a verified Gdl with the construction trace; everything else -> search
// when enabled, Unsupported otherwise. A constructed labeling that fails
// verification is an internal error, never returned.
Certificate plan_and_construct(const CircuitFamily& family,
                               const PlanOptions& options = {});

}  // namespace gdl
