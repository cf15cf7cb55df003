#include "gdl/triangles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "gdl/catalog.hpp"
#include "gdl/constructions.hpp"

namespace gdl {
namespace {

int ceil_half(int r) {
  // exact for r in [-4, 2]: C++ division truncates toward zero
  return (r > 0 && r % 2 != 0) ? r / 2 + 1 : r / 2;
}

struct Row {
  int l1, l2, l3;
};

// Vertex labels of main triangle T_i (1-based) per the case tables.
Row table_row(const CaseParameters& p, int i) {
  const int th = p.theta;
  const int t = p.t;
  if (p.case_tag == 'A' || p.case_tag == 'B') {
    if (p.case_tag == 'B') {
      if (i == 2 * th - 1) return {2 * th - 1, 3 * th + 3 * t + 1, 4 * th + 3 * t + 1};
      if (i == 2 * th) return {2 * th, 4 * th + 3 * t + 2, 3 * th};
    }
    switch (i) {
      case 1: return {1, 2 * th + 1, 6 * th + 3 * t - 3};
      case 2: return {2, 6 * th + 3 * t, 4 * th + 3 * t};
      case 3: return {3, 6 * th + 3 * t - 1, 2 * th + 2};
      case 4: return {4, 4 * th + 3 * t - 1, 6 * th + 3 * t - 2};
      default:
        if (i % 2 == 1) {
          const int k = (i + 1) / 2;
          return {2 * k - 1, 2 * th + k, 6 * th + 3 * t - 2 * k + 2};
        }
        const int k = i / 2;
        return {2 * k, 6 * th + 3 * t - 2 * k + 1, 4 * th + 3 * t - k + 1};
    }
  }
  // cases C and D
  if (p.case_tag == 'D') {
    if (i == 2 * th - 4) return {2 * th - 4, 4 * th + 3 * t - 1, 3 * th + 3 * t + 1};
    if (i == 2 * th - 3) return {2 * th - 3, 4 * th + 3 * t + 2, 3 * th - 2};
    if (i == 2 * th - 2) return {2 * th - 2, 3 * th + 3 * t, 4 * th + 3 * t + 1};
    if (i == 2 * th - 1) return {2 * th - 1, 3 * th - 1, 4 * th + 3 * t};
  }
  switch (i) {
    case 1: return {1, 2 * th, 6 * th + 3 * t - 6};
    case 2: return {2, 6 * th + 3 * t - 3, 4 * th + 3 * t - 2};
    case 3: return {3, 6 * th + 3 * t - 4, 2 * th + 1};
    case 4: return {4, 4 * th + 3 * t - 3, 6 * th + 3 * t - 5};
    case 5: return {5, 2 * th + 2, 6 * th + 3 * t - 7};
    default:
      if (i % 2 == 0) {
        const int k = i / 2;
        return {2 * k, 6 * th + 3 * t - 2 * k - 2, 4 * th + 3 * t - k - 1};
      }
      const int k = (i - 1) / 2;
      return {2 * k + 1, 2 * th + k, 6 * th + 3 * t - 2 * k - 3};
  }
}

struct DlRow {
  int s, m, b;
};

// Table difference labels for pair `pair`, member slot 0/1 (real and dummy).
DlRow table_dls(const CaseParameters& p, int pair, int slot) {
  const int th = p.theta;
  const int t = p.t;
  if (p.case_tag == 'A' || p.case_tag == 'B') {
    if (p.case_tag == 'B' && pair == th - 1)
      return slot == 0
                 ? DlRow{-(th + 1), -(th + 3 * t + 4), 2 * th + 3 * t + 5}
                 : DlRow{th + 1, th + 3 * t + 2, -(2 * th + 3 * t + 3)};
    if (p.case_tag == 'B' && pair == th)
      return slot == 0 ? DlRow{th, th + 3 * t + 2, -(2 * th + 3 * t + 2)}
                       : DlRow{-th, -(th + 3 * t + 2), 2 * th + 3 * t + 2};
    if (p.case_tag == 'A' && pair == th)
      return slot == 0 ? DlRow{-th, -(th + 3 * t + 1), 2 * th + 3 * t + 1}
                       : DlRow{th, th + 3 * t - 1, -(2 * th + 3 * t - 1)};
    switch (pair) {
      case 0:
        return slot == 0
                   ? DlRow{2 * th, 4 * th + 3 * t - 4, -(6 * th + 3 * t - 4)}
                   : DlRow{-2 * th, -(4 * th + 3 * t - 2), 6 * th + 3 * t - 2};
      case 1:
        return slot == 0
                   ? DlRow{-(2 * th - 1), -(4 * th + 3 * t - 3), 6 * th + 3 * t - 4}
                   : DlRow{2 * th - 1, 4 * th + 3 * t - 5, -(6 * th + 3 * t - 6)};
      case 2:
        return slot == 0
                   ? DlRow{-(2 * th - 2), -(4 * th + 3 * t - 5), 6 * th + 3 * t - 7}
                   : DlRow{2 * th - 2, 4 * th + 3 * t - 7, -(6 * th + 3 * t - 9)};
      default: {
        const int k = pair;
        return slot == 0 ? DlRow{-(2 * th - k), -(4 * th + 3 * t - 3 * k + 1),
                                 6 * th + 3 * t - 4 * k + 1}
                         : DlRow{2 * th - k, 4 * th + 3 * t - 3 * k - 1,
                                 -(6 * th + 3 * t - 4 * k - 1)};
      }
    }
  }
  // cases C and D
  if (p.case_tag == 'D' && pair == th - 2)
    return slot == 0 ? DlRow{-(th + 1), -(th + 3 * t + 4), 2 * th + 3 * t + 5}
                     : DlRow{th + 1, th + 3 * t + 2, -(2 * th + 3 * t + 3)};
  if (p.case_tag == 'D' && pair == th - 1)
    return slot == 0 ? DlRow{th, th + 3 * t + 1, -(2 * th + 3 * t + 1)}
                     : DlRow{-(th - 2), -(th + 3 * t + 5), 2 * th + 3 * t + 3};
  switch (pair) {
    case 0:
      return slot == 0
                 ? DlRow{2 * th - 1, 4 * th + 3 * t - 6, -(6 * th + 3 * t - 7)}
                 : DlRow{-(2 * th - 1), -(4 * th + 3 * t - 4), 6 * th + 3 * t - 5};
    case 1:
      return slot == 0
                 ? DlRow{-(2 * th - 2), -(4 * th + 3 * t - 5), 6 * th + 3 * t - 7}
                 : DlRow{2 * th - 2, 4 * th + 3 * t - 7, -(6 * th + 3 * t - 9)};
    case 2:
      return slot == 0
                 ? DlRow{-(2 * th - 3), -(4 * th + 3 * t - 7), 6 * th + 3 * t - 10}
                 : DlRow{2 * th - 3, 4 * th + 3 * t - 9, -(6 * th + 3 * t - 12)};
    default: {
      const int k = pair;
      return slot == 0 ? DlRow{-(2 * th - k - 1), -(4 * th + 3 * t - 3 * k - 1),
                               6 * th + 3 * t - 4 * k - 2}
                       : DlRow{2 * th - k - 1, 4 * th + 3 * t - 3 * k - 3,
                               -(6 * th + 3 * t - 4 * k - 4)};
    }
  }
}

// Member triangle ids for pair `pair`; 0 marks a dummy member.
std::array<int, 2> pair_members(const CaseParameters& p, int pair) {
  const int th = p.theta;
  if (p.case_tag == 'A' || p.case_tag == 'B') {
    if (p.case_tag == 'A' && pair == th) return {2 * th, 0};
    if (p.case_tag == 'B' && pair == th - 1) return {2 * th - 2, 0};
    if (p.case_tag == 'B' && pair == th) return {2 * th - 1, 2 * th};
  } else if (p.case_tag == 'D') {
    if (pair == th - 2) return {2 * th - 3, 2 * th - 2};
    if (pair == th - 1) return {2 * th - 1, 2 * th - 4};
  }
  switch (pair) {
    case 0: return {1, 2};
    case 1: return {3, 4};
    case 2: return {0, 5};
    default: return {2 * pair, 2 * pair + 1};
  }
}

TriangleDls computed_dls(const Labeling& lab, int triangle_id) {
  const int off = lab.family.circuit_offset(triangle_id - 1);
  const int a = lab.labels[off];
  const int b = lab.labels[off + 1];
  const int c = lab.labels[off + 2];
  std::array<int, 3> d{b - a, c - b, a - c};
  std::sort(d.begin(), d.end(),
            [](int x, int y) { return std::abs(x) < std::abs(y); });
  if (std::abs(d[0]) == std::abs(d[1]) || std::abs(d[1]) == std::abs(d[2]))
    throw std::logic_error("triangle difference labels not magnitude-distinct");
  return TriangleDls{triangle_id, d[0], d[1], d[2]};
}

void check_sub_gdl(const Labeling& sub, int t) {
  if (sub.family.circuit_count() != t)
    throw std::invalid_argument("sub labeling must cover t triangles");
  for (int k : sub.family.lengths())
    if (k != 3) throw std::invalid_argument("sub labeling must be all triangles");
  const VerificationReport rep = verify_gdl(sub);
  const int limit = 3 * t - 2;
  if (!rep.is_gdl || rep.max_magnitude > limit)
    throw std::invalid_argument("sub labeling violates the magnitude profile");
  const auto it = rep.magnitude_counts.find(limit);
  if (it != rep.magnitude_counts.end() && it->second > 1)
    throw std::invalid_argument("sub labeling violates the magnitude profile");
}

void check_magnitude_property(const VerificationReport& rep, int n) {
  const int limit = 3 * n - 2;
  if (rep.max_magnitude > limit)
    throw std::logic_error("magnitude above 3n-2 in triangle construction");
  const auto it = rep.magnitude_counts.find(limit);
  if (it != rep.magnitude_counts.end() && it->second > 1)
    throw std::logic_error("more than one arc of magnitude 3n-2");
}

// Applies the pair flips the construction calls for, re-detecting conflicts on
// the current difference labels between phases.
class Resolver {
 public:
  Resolver(Labeling lab, std::vector<TrianglePairing> pairs,
           const CaseParameters& p)
      : lab_(std::move(lab)),
        pairs_(std::move(pairs)),
        p_(p),
        pair_parity_(pairs_.size(), 0),
        tri_parity_(p.n + 1, 0) {}

  ResolveOutcome run(const ConflictRelation& initial) {
    chain_flips(initial.real);
    star_flips();
    endgame_flips();
    sub_block_flip();
    verify_and_fallback();
    return finish();
  }

 private:
  void flip_tri(int q) {
    flip_triangle_inplace(lab_, q - 1);
    tri_parity_[q] ^= 1;
  }

  void flip_pair(int i) {
    for (TriangleDls& m : pairs_[i].member) {
      m.small = -m.small;
      m.medium = -m.medium;
      m.big = -m.big;
      if (!m.is_dummy()) flip_tri(m.triangle);
    }
    pair_parity_[i] ^= 1;
  }

  std::vector<Conflict> current_conflicts() const {
    return detect_conflicts(pairs_).real;
  }

  // Highest pair index the generic flip machinery may touch. Case B's last
  // pair and case D's last two pairs follow their own endgame arguments.
  int generic_upper() const {
    switch (p_.case_tag) {
      case 'A': return p_.theta;
      case 'B':
      case 'C': return p_.theta - 1;
      default: return p_.theta - 3;
    }
  }

  // J: pairs with both an incoming and an outgoing conflict (targets >= 2);
  // J': unflipped pairs sharing a target with a member of J.
  void chain_flips(const std::vector<Conflict>& base) {
    const int upper = generic_upper();
    std::vector<Conflict> generic;
    for (const Conflict& c : base)
      if (c.source <= upper) generic.push_back(c);
    std::set<int> has_in, has_out;
    for (const Conflict& c : generic) {
      has_in.insert(c.target);
      if (c.target >= 2) has_out.insert(c.source);
    }
    std::set<int> J;
    for (int j : has_in)
      if (has_out.count(j)) J.insert(j);
    std::set<int> Jp;
    for (const Conflict& c : generic) {
      if (c.target < 2 || !J.count(c.source)) continue;
      for (const Conflict& c2 : generic)
        if (c2.target == c.target && c2.source != c.source &&
            !J.count(c2.source))
          Jp.insert(c2.source);
    }
    for (int l : J) flip_pair(l);
    for (int l : Jp) flip_pair(l);
  }

  // Remaining generic conflicts among indices >= 2 form disjoint stars: one
  // target, one or two adjacent sources. Flip the target when the smaller
  // source is at most 2*theta/3, else flip the sources.
  void star_flips() {
    const int upper = generic_upper();
    std::map<int, std::set<int>> stars;
    for (const Conflict& c : current_conflicts())
      if (c.target >= 2 && c.source <= upper) stars[c.target].insert(c.source);
    for (const auto& [target, sources] : stars) {
      const int i = *sources.begin();
      if (3 * i <= 2 * p_.theta) {
        flip_pair(target);
      } else {
        for (int s : sources) flip_pair(s);
      }
    }
  }

  // Case D ties its last two pairs together: their bigs carry the same
  // magnitude with opposite signs, so either both flip or neither does.
  // Any live conflict out of them is cleared by flipping both.
  void case_d_special_flips() {
    if (p_.case_tag != 'D') return;
    bool live = false;
    for (const Conflict& c : current_conflicts())
      if (c.source >= p_.theta - 2) live = true;
    if (!live) return;
    flip_pair(p_.theta - 2);
    flip_pair(p_.theta - 1);
  }

  // Cases A/B protect pi_1 (pi_0 is parity-immune); cases C/D protect pi_0
  // (pi_1 is parity-immune). A leftover big-big collision between T_1 and
  // T_3 is cleared by flipping the other front pair.
  void endgame_flips() {
    case_d_special_flips();
    const bool ab = p_.case_tag == 'A' || p_.case_tag == 'B';
    const int guarded = ab ? 1 : 0;
    bool hit = false;
    for (const Conflict& c : current_conflicts())
      if (c.target == guarded && c.source >= 2) hit = true;
    if (hit) flip_pair(guarded);
    if (pairs_[0].member[0].big == pairs_[1].member[0].big)
      flip_pair(ab ? 0 : 1);
  }

  // Only case A with theta = 3t-2 lets the embedded block's extreme arc
  // collide with the one main arc of magnitude theta; negating the whole
  // block keeps it a gdl and moves its arc to the opposite sign.
  void sub_block_flip() {
    if (p_.case_tag != 'A' || p_.theta != 3 * p_.t - 2) return;
    const int main_arc_dl = pairs_[p_.theta].member[0].small;  // +-theta
    bool collides = false;
    for (int c = p_.main_triangles(); c < p_.n && !collides; ++c) {
      const int off = 3 * c;
      const int a = lab_.labels[off], b = lab_.labels[off + 1],
                d = lab_.labels[off + 2];
      collides = b - a == main_arc_dl || d - b == main_arc_dl ||
                 a - d == main_arc_dl;
    }
    if (!collides) return;
    for (int q = p_.main_triangles() + 1; q <= p_.n; ++q) flip_tri(q);
    sub_flipped_ = true;
  }

  int pair_of_triangle(int q) const {
    for (const TrianglePairing& pr : pairs_)
      for (const TriangleDls& m : pr.member)
        if (m.triangle == q) return pr.index;
    throw std::logic_error("triangle not found in any pair");
  }

  bool acceptable(const VerificationReport& rep) const {
    if (!rep.is_gdl) return false;
    check_magnitude_property(rep, p_.n);  // flips cannot repair magnitudes
    return true;
  }

  void verify_and_fallback() {
    VerificationReport rep = verify_gdl(lab_);
    if (acceptable(rep)) return;
    fallback_used_ = true;
    const int budget = 4 * p_.theta;
    for (int iter = 0; iter < budget; ++iter) {
      const auto& dup = rep.duplicate_pairs.front();
      const int arc = iter % 2 == 0 ? dup.second : dup.first;
      const int circuit = arc / 3;
      ++fallback_flips_;
      if (circuit < p_.main_triangles())
        flip_pair(pair_of_triangle(circuit + 1));
      else
        flip_tri(circuit + 1);
      rep = verify_gdl(lab_);
      if (acceptable(rep)) return;
    }
    throw std::logic_error("fallback resolver exhausted at n=" +
                           std::to_string(p_.n));
  }

  ResolveOutcome finish() {
    TriangleStage stage;
    stage.n = p_.n;
    stage.case_tag = p_.case_tag;
    stage.t = p_.t;
    stage.r = p_.r;
    stage.theta = p_.theta;
    for (std::size_t i = 0; i < pair_parity_.size(); ++i)
      if (pair_parity_[i]) stage.flipped_pairs.push_back(static_cast<int>(i));
    for (int q = 1; q <= p_.n; ++q)
      if (tri_parity_[q]) stage.flipped_triangles.push_back(q);
    stage.sub_block_flipped = sub_flipped_;
    stage.fallback_used = fallback_used_;
    stage.fallback_flips = fallback_flips_;
    return ResolveOutcome{std::move(lab_), std::move(stage)};
  }

  Labeling lab_;
  std::vector<TrianglePairing> pairs_;
  CaseParameters p_;
  std::vector<char> pair_parity_;
  std::vector<char> tri_parity_;
  bool sub_flipped_ = false;
  bool fallback_used_ = false;
  int fallback_flips_ = 0;
};

}  // namespace

CaseParameters case_parameters(int n) {
  if (n < 10)
    throw std::invalid_argument("case split applies for n >= 10 triangles");
  CaseParameters p;
  p.n = n;
  p.t = (n + 4) / 7;
  p.r = n - 7 * p.t;
  p.theta = 3 * p.t + ceil_half(p.r);
  switch (p.r) {
    case -4:
    case -2:
    case 0: p.case_tag = 'A'; break;
    case 2: p.case_tag = 'B'; break;
    case -3:
    case -1: p.case_tag = 'C'; break;
    case 1: p.case_tag = 'D'; break;
    default: throw std::logic_error("remainder outside [-4, 2]");
  }
  // theta = ceil((n - t) / 2) by construction
  if (p.theta != (n - p.t + 1) / 2)
    throw std::logic_error("theta disagrees with ceil((n-t)/2)");
  return p;
}

Labeling base_table_labeling(const CaseParameters& params,
                             const Labeling& sub_gdl) {
  check_sub_gdl(sub_gdl, params.t);
  const int n = params.n;
  const int main = params.main_triangles();
  CircuitFamily fam(std::vector<int>(n, 3));
  PartialLabeling partial = make_partial(fam);
  for (int i = 1; i <= main; ++i) {
    const Row row = table_row(params, i);
    const int off = 3 * (i - 1);
    partial.labels[off] = row.l1;
    partial.labels[off + 1] = row.l2;
    partial.labels[off + 2] = row.l3;
  }
  std::vector<int> placement(params.t);
  std::iota(placement.begin(), placement.end(), main);
  shift_and_embed(sub_gdl, params.sub_shift(), placement, partial);
  Labeling lab = finish_partial(partial);
  std::vector<int> sorted = lab.labels;
  std::sort(sorted.begin(), sorted.end());
  for (int v = 0; v < 3 * n; ++v)
    if (sorted[v] != v + 1)
      throw std::logic_error("table labeling is not a bijection onto 1..3n");
  return lab;
}

std::vector<TrianglePairing> classify_pairs(const Labeling& labeling,
                                            const CaseParameters& params) {
  std::vector<TrianglePairing> pairs(params.pair_count());
  for (int i = 0; i < params.pair_count(); ++i) {
    pairs[i].index = i;
    const std::array<int, 2> members = pair_members(params, i);
    for (int slot = 0; slot < 2; ++slot) {
      const DlRow expected = table_dls(params, i, slot);
      if (members[slot] == 0) {
        pairs[i].member[slot] =
            TriangleDls{0, expected.s, expected.m, expected.b};
        continue;
      }
      TriangleDls dls = computed_dls(labeling, members[slot]);
      if (dls.small != expected.s || dls.medium != expected.m ||
          dls.big != expected.b)
        throw std::logic_error(
            "computed difference labels disagree with the table for T_" +
            std::to_string(members[slot]));
      if (dls.small + dls.medium != -dls.big ||
          std::abs(dls.small) + std::abs(dls.medium) != std::abs(dls.big))
        throw std::logic_error("pairing member violates s+m=-b");
      pairs[i].member[slot] = dls;
    }
  }
  return pairs;
}

ConflictRelation detect_conflicts(const std::vector<TrianglePairing>& pairings) {
  ConflictRelation rel;
  const int count = static_cast<int>(pairings.size());
  for (int i = 1; i < count; ++i)
    for (int j = 0; j < i; ++j)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          if (pairings[i].member[x].big != pairings[j].member[y].medium)
            continue;
          const Conflict c{i, j, x, y};
          if (pairings[i].member[x].is_dummy() ||
              pairings[j].member[y].is_dummy())
            rel.dummy.push_back(c);
          else
            rel.real.push_back(c);
        }
  return rel;
}

ResolveOutcome resolve_conflicts(const Labeling& labeling,
                                 const std::vector<TrianglePairing>& pairings,
                                 const ConflictRelation& conflicts,
                                 const CaseParameters& params) {
  Resolver resolver(labeling, pairings, params);
  return resolver.run(conflicts);
}

NC3Result label_n_c3_with_trace(int n) {
  if (n <= 1) throw UnsupportedError("C3 alone has no gdl; need n >= 2");
  if (n <= 9) return NC3Result{Catalog::instance().n_c3(n), {}};
  const CaseParameters params = case_parameters(n);
  NC3Result sub = label_n_c3_with_trace(params.t);
  const Labeling base = base_table_labeling(params, sub.labeling);
  const std::vector<TrianglePairing> pairs = classify_pairs(base, params);
  ResolveOutcome out =
      resolve_conflicts(base, pairs, detect_conflicts(pairs), params);
  NC3Result result;
  result.labeling = std::move(out.labeling);
  result.stages.push_back(std::move(out.stage));
  result.stages.insert(result.stages.end(), sub.stages.begin(),
                       sub.stages.end());
  return result;
}

Labeling label_n_c3(int n) { return label_n_c3_with_trace(n).labeling; }

namespace {

// Flips the circuit that replaced a triangle: exchanging the labels of the
// inserted vertex's two neighbours negates all four difference labels.
void flip_unit(Labeling& lab, int circuit, bool ab_insertion) {
  const int off = lab.family.circuit_offset(circuit);
  if (lab.family.circuit_length(circuit) == 3) {
    flip_triangle_inplace(lab, circuit);
  } else if (ab_insertion) {
    std::swap(lab.labels[off + 1], lab.labels[off + 3]);  // v5 <-> v6
  } else {
    std::swap(lab.labels[off], lab.labels[off + 2]);  // v7 <-> v9
  }
}

int arc_circuit(const CircuitFamily& fam, int arc) {
  int c = 0;
  while (arc >= fam.circuit_length(c)) arc -= fam.circuit_length(c++);
  return c;
}

}  // namespace

NC3Result label_c4_plus_n_c3_with_trace(int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1 triangles next to the C4");
  if (n == 1) {
    Labeling one = label_fixed_base(FixedBaseKind::c4_plus_odd(3));
    return NC3Result{reorder_circuits(one, CircuitFamily({3, 4})), {}};
  }
  if (n <= 8) return NC3Result{Catalog::instance().c4_plus_n_c3(n), {}};

  const int m = n + 1;
  const CaseParameters params = case_parameters(m);
  NC3Result sub = label_n_c3_with_trace(params.t);
  const Labeling base = base_table_labeling(params, sub.labeling);
  const std::vector<TrianglePairing> pairs = classify_pairs(base, params);
  ResolveOutcome resolved =
      resolve_conflicts(base, pairs, detect_conflicts(pairs), params);

  const bool ab = params.case_tag == 'A' || params.case_tag == 'B';
  const int replaced = ab ? 2 : 3;  // triangle replaced by the C4

  std::vector<int> lengths(m, 3);
  lengths[replaced - 1] = 4;
  CircuitFamily fam(lengths);
  std::vector<int> labels(fam.total_vertices());
  const int bump = ab ? 1 : 0;  // A/B shift every old label up to free 1
  for (int i = 1, out = 0; i <= m; ++i) {
    const int src = 3 * (i - 1);
    if (i != replaced) {
      labels[out++] = base.labels[src] + bump;
      labels[out++] = base.labels[src + 1] + bump;
      labels[out++] = base.labels[src + 2] + bump;
      continue;
    }
    if (ab) {
      // C4 = (v4, v5, v0, v6) with the new vertex labeled 1
      labels[out++] = base.labels[src] + 1;
      labels[out++] = base.labels[src + 1] + 1;
      labels[out++] = 1;
      labels[out++] = base.labels[src + 2] + 1;
    } else {
      // C4 = (v7, v8, v9, v0) with the new vertex labeled 3m+1 = 3n+4
      labels[out++] = base.labels[src];
      labels[out++] = base.labels[src + 1];
      labels[out++] = base.labels[src + 2];
      labels[out++] = 3 * m + 1;
    }
  }
  Labeling lab{fam, std::move(labels)};

  // Replay exactly the flip set of the (n+1)*C3 resolution.
  for (int q : resolved.stage.flipped_triangles) flip_unit(lab, q - 1, ab);

  VerificationReport rep = verify_gdl(lab);
  if (!rep.is_gdl) {
    resolved.stage.fallback_used = true;
    const int budget = 4 * params.theta;
    int iter = 0;
    for (; iter < budget && !rep.is_gdl; ++iter) {
      const auto& dup = rep.duplicate_pairs.front();
      const int arc = iter % 2 == 0 ? dup.second : dup.first;
      flip_unit(lab, arc_circuit(fam, arc), ab);
      ++resolved.stage.fallback_flips;
      rep = verify_gdl(lab);
    }
    if (!rep.is_gdl)
      throw std::logic_error("flip replay fallback exhausted at n=" +
                             std::to_string(n));
  }

  std::vector<int> target(n, 3);
  target.push_back(4);
  NC3Result result;
  result.labeling = reorder_circuits(lab, CircuitFamily(target));
  result.stages.push_back(std::move(resolved.stage));
  result.stages.insert(result.stages.end(), sub.stages.begin(),
                       sub.stages.end());
  return result;
}

Labeling label_c4_plus_n_c3(int n) {
  return label_c4_plus_n_c3_with_trace(n).labeling;
}

}  // namespace gdl
