// Core domain types for graceful difference labelings (gdl) of disjoint
// unions of directed circuits: the circuit family, labelings, the verifier,
// and the primitive labeling transformations shared by all constructions.
//
// Conventions: vertex labels are 1-based (1..n); vertex indices are 0-based,
// numbered circuit by circuit in declaration order. A circuit with vertices
// u_1..u_k carries the arcs u_1u_2, ..., u_{k-1}u_k, u_ku_1, and the arc uv
// gets the difference label f(v)-f(u).
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gdl {

// Requested configuration provably has no gdl, or lies outside the
// constructive coverage.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arc {
  int tail = 0;
  int head = 0;
};

// Multiset of circuit lengths (each >= 2), kept in declaration order.
// Derives the global vertex numbering and the canonical arc order.
class CircuitFamily {
 public:
  CircuitFamily() = default;
  explicit CircuitFamily(std::vector<int> lengths);

  const std::vector<int>& lengths() const { return lengths_; }
  int circuit_count() const { return static_cast<int>(lengths_.size()); }
  int circuit_length(int c) const { return lengths_.at(c); }
  int circuit_offset(int c) const { return offsets_.at(c); }
  int total_vertices() const { return total_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  std::vector<int> sorted_lengths() const;
  bool same_multiset(const CircuitFamily& other) const;

  friend bool operator==(const CircuitFamily& a, const CircuitFamily& b) {
    return a.lengths_ == b.lengths_;
  }

 private:
  std::vector<int> lengths_;
  std::vector<int> offsets_;
  std::vector<Arc> arcs_;
  int total_ = 0;
};

struct Labeling {
  CircuitFamily family;
  std::vector<int> labels;  // labels[v] in 1..n, canonical vertex order
};

struct VerificationReport {
  bool is_bijection = false;
  bool is_gdl = false;  // is_bijection and all difference labels distinct
  std::vector<int> difference_labels;  // per arc, canonical arc order
  int max_magnitude = 0;
  std::map<int, int> magnitude_counts;              // magnitude -> arc count
  std::vector<std::pair<int, int>> duplicate_pairs;  // arc index pairs
};

// Pure, deterministic; throws std::invalid_argument on structural errors
// (wrong label count, labels outside 1..n).
VerificationReport verify_gdl(const Labeling& labeling);

// Exchanges the labels of the second and third vertex of the indexed
// triangle; negates that triangle's set of difference labels.
Labeling flip_triangle(const Labeling& labeling, int circuit_index);
void flip_triangle_inplace(Labeling& labeling, int circuit_index);

// Partially assigned labeling; 0 marks an unassigned vertex.
struct PartialLabeling {
  CircuitFamily family;
  std::vector<int> labels;
};

PartialLabeling make_partial(const CircuitFamily& family);

// Writes inner's labels, shifted by offset, into the outer slots selected by
// placement (placement[i] = outer circuit index receiving inner circuit i).
// Shifting leaves the embedded difference labels unchanged.
void shift_and_embed(const Labeling& inner, int offset,
                     const std::vector<int>& placement, PartialLabeling& outer);

// All slots assigned -> Labeling, else throws.
Labeling finish_partial(const PartialLabeling& partial);

// Necessary condition |A| <= 2(|V|-1); for circuit families this holds
// exactly when n >= 2 (vacuously true for the empty family).
bool arc_count_bound(const CircuitFamily& family);

// Permutes whole circuit blocks so the result follows target's declaration
// order (lengths matched greedily). Per-arc difference labels are preserved,
// so gdl-ness is too. Throws when the multisets differ.
Labeling reorder_circuits(const Labeling& labeling,
                          const CircuitFamily& target);

// ---------------------------------------------------------------------------
// Certificates

enum class CertStatus { Gdl, NoGdlExhaustive, Unsupported, Timeout };

std::string to_string(CertStatus status);

struct SearchStats {
  std::uint64_t nodes = 0;  // label placements that passed all pruning checks
  double seconds = 0.0;
  bool symmetry = true;
  double symmetry_factor = 1.0;  // rotations * equal-length-circuit orderings
  int threads = 1;
};

// One application of the n-triangle table construction: which case row the
// instance fell in and which pairs/triangles were flipped to clear conflicts.
struct TriangleStage {
  int n = 0;
  char case_tag = '?';
  int t = 0;
  int r = 0;
  int theta = 0;
  std::vector<int> flipped_pairs;      // pair indices with odd flip parity
  bool sub_block_flipped = false;      // embedded t-triangle block negated
  std::vector<int> flipped_triangles;  // 1-based triangle ids, net parity (F)
  bool fallback_used = false;
  int fallback_flips = 0;
};

struct ConstructionTrace {
  std::string base;
  std::vector<std::string> extensions;
  std::vector<TriangleStage> stages;  // outermost recursion level first
};

struct Certificate {
  CertStatus status = CertStatus::Unsupported;
  std::optional<Labeling> labeling;  // present iff status == Gdl
  std::string reason;
  bool exception = false;  // one of the two known non-gdl families
  std::optional<ConstructionTrace> trace;
  std::optional<SearchStats> search;
  std::uint64_t budget_nodes = 0;  // echoed on Timeout
  double budget_seconds = 0.0;
};

}  // namespace gdl
