#include "gdl/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace gdl {

CircuitFamily::CircuitFamily(std::vector<int> lengths)
    : lengths_(std::move(lengths)) {
  offsets_.reserve(lengths_.size());
  for (int k : lengths_) {
    if (k < 2) throw std::invalid_argument("circuit length must be >= 2");
    offsets_.push_back(total_);
    total_ += k;
  }
  arcs_.reserve(total_);
  for (std::size_t c = 0; c < lengths_.size(); ++c) {
    const int off = offsets_[c];
    const int k = lengths_[c];
    for (int i = 0; i + 1 < k; ++i) arcs_.push_back({off + i, off + i + 1});
    arcs_.push_back({off + k - 1, off});
  }
}

std::vector<int> CircuitFamily::sorted_lengths() const {
  std::vector<int> s = lengths_;
  std::sort(s.begin(), s.end());
  return s;
}

bool CircuitFamily::same_multiset(const CircuitFamily& other) const {
  return sorted_lengths() == other.sorted_lengths();
}

VerificationReport verify_gdl(const Labeling& labeling) {
  const CircuitFamily& fam = labeling.family;
  const int n = fam.total_vertices();
  if (static_cast<int>(labeling.labels.size()) != n)
    throw std::invalid_argument("labeling has wrong label count");
  for (int v : labeling.labels)
    if (v < 1 || v > n)
      throw std::invalid_argument("vertex label outside 1..n");

  VerificationReport rep;
  std::vector<int> seen(n + 1, 0);
  rep.is_bijection = true;
  for (int v : labeling.labels)
    if (++seen[v] > 1) rep.is_bijection = false;

  // Difference labels live in [-(n-1), n-1]; a direct-indexed table gives
  // O(1) duplicate detection per arc.
  const auto& arcs = fam.arcs();
  rep.difference_labels.reserve(arcs.size());
  std::vector<int> first_arc(2 * n + 1, -1);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const int d =
        labeling.labels[arcs[a].head] - labeling.labels[arcs[a].tail];
    rep.difference_labels.push_back(d);
    const int mag = std::abs(d);
    if (mag > rep.max_magnitude) rep.max_magnitude = mag;
    ++rep.magnitude_counts[mag];
    const int slot = d + n;
    if (first_arc[slot] >= 0)
      rep.duplicate_pairs.emplace_back(first_arc[slot], static_cast<int>(a));
    else
      first_arc[slot] = static_cast<int>(a);
  }
  rep.is_gdl = rep.is_bijection && rep.duplicate_pairs.empty();
  return rep;
}

void flip_triangle_inplace(Labeling& labeling, int circuit_index) {
  const CircuitFamily& fam = labeling.family;
  if (circuit_index < 0 || circuit_index >= fam.circuit_count())
    throw std::out_of_range("circuit index out of range");
  if (fam.circuit_length(circuit_index) != 3)
    throw std::invalid_argument("flip requires a circuit of length 3");
  const int off = fam.circuit_offset(circuit_index);
  std::swap(labeling.labels[off + 1], labeling.labels[off + 2]);
}

Labeling flip_triangle(const Labeling& labeling, int circuit_index) {
  Labeling out = labeling;
  flip_triangle_inplace(out, circuit_index);
  return out;
}

PartialLabeling make_partial(const CircuitFamily& family) {
  return PartialLabeling{family,
                         std::vector<int>(family.total_vertices(), 0)};
}

void shift_and_embed(const Labeling& inner, int offset,
                     const std::vector<int>& placement,
                     PartialLabeling& outer) {
  if (offset < 0) throw std::invalid_argument("offset must be >= 0");
  const CircuitFamily& in_fam = inner.family;
  if (static_cast<int>(placement.size()) != in_fam.circuit_count())
    throw std::invalid_argument("placement size mismatch");
  if (static_cast<int>(inner.labels.size()) != in_fam.total_vertices())
    throw std::invalid_argument("inner labeling has wrong label count");

  std::vector<int> used(outer.family.circuit_count(), 0);
  const int n_outer = outer.family.total_vertices();
  for (int c = 0; c < in_fam.circuit_count(); ++c) {
    const int slot = placement[c];
    if (slot < 0 || slot >= outer.family.circuit_count())
      throw std::out_of_range("placement slot out of range");
    if (used[slot]++) throw std::invalid_argument("placement not injective");
    if (outer.family.circuit_length(slot) != in_fam.circuit_length(c))
      throw std::invalid_argument("placement length mismatch");
    const int in_off = in_fam.circuit_offset(c);
    const int out_off = outer.family.circuit_offset(slot);
    for (int i = 0; i < in_fam.circuit_length(c); ++i) {
      const int label = inner.labels[in_off + i] + offset;
      if (label < 1 || label > n_outer)
        throw std::invalid_argument("shifted label outside 1..n");
      if (outer.labels[out_off + i] != 0)
        throw std::invalid_argument("collision with assigned outer label");
      outer.labels[out_off + i] = label;
    }
  }
}

Labeling finish_partial(const PartialLabeling& partial) {
  for (int v : partial.labels)
    if (v == 0) throw std::invalid_argument("partial labeling incomplete");
  return Labeling{partial.family, partial.labels};
}

bool arc_count_bound(const CircuitFamily& family) {
  const int n = family.total_vertices();
  if (n == 0) return true;
  return static_cast<int>(family.arcs().size()) <= 2 * (n - 1);
}

Labeling reorder_circuits(const Labeling& labeling,
                          const CircuitFamily& target) {
  const CircuitFamily& src = labeling.family;
  if (!src.same_multiset(target))
    throw std::logic_error("circuit multisets differ; cannot reorder");
  std::vector<char> used(src.circuit_count(), 0);
  std::vector<int> labels(target.total_vertices());
  for (int c = 0; c < target.circuit_count(); ++c) {
    int pick = -1;
    for (int s = 0; s < src.circuit_count(); ++s)
      if (!used[s] && src.circuit_length(s) == target.circuit_length(c)) {
        pick = s;
        break;
      }
    if (pick < 0) throw std::logic_error("no matching circuit length");
    used[pick] = 1;
    const int from = src.circuit_offset(pick);
    const int to = target.circuit_offset(c);
    for (int i = 0; i < target.circuit_length(c); ++i)
      labels[to + i] = labeling.labels[from + i];
  }
  return Labeling{target, std::move(labels)};
}

std::string to_string(CertStatus status) {
  switch (status) {
    case CertStatus::Gdl:
      return "gdl";
    case CertStatus::NoGdlExhaustive:
      return "no_gdl_exhaustive";
    case CertStatus::Unsupported:
      return "unsupported";
    case CertStatus::Timeout:
      return "timeout";
  }
  return "unknown";
}

}  // namespace gdl
