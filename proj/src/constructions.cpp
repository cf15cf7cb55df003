#include "gdl/constructions.hpp"

#include <algorithm>
#include <set>

#include "gdl/triangles.hpp"

namespace gdl {
namespace {

Labeling checked(Labeling lab, const char* what) {
  if (!verify_gdl(lab).is_gdl)
    throw std::logic_error(std::string("constructed labeling failed "
                                       "verification: ") +
                           what);
  return lab;
}

// Shifts g up by 2 and appends a triangle labeled (1,2,n+3) or (2,1,n+3),
// choosing the orientation whose magnitude-1 arc opposes the one in g.
// Requires g to have exactly one arc of magnitude 1.
Labeling attach_c3(const Labeling& g, int magnitude1_sign) {
  const int n = g.family.total_vertices();
  std::vector<int> lengths = g.family.lengths();
  lengths.push_back(3);
  std::vector<int> labels;
  labels.reserve(n + 3);
  for (int v : g.labels) labels.push_back(v + 2);
  if (magnitude1_sign < 0) {
    labels.insert(labels.end(), {1, 2, n + 3});
  } else {
    labels.insert(labels.end(), {2, 1, n + 3});
  }
  return Labeling{CircuitFamily(lengths), std::move(labels)};
}

Labeling two_c4_from_empty() {
  return Labeling{CircuitFamily({4, 4}), {1, 8, 2, 6, 3, 5, 4, 7}};
}

struct FamilyCounts {
  int c2 = 0;
  int c3 = 0;
  int c4 = 0;
  std::vector<int> evens6;  // even lengths >= 6
  std::vector<int> odds5;   // odd lengths >= 5
};

FamilyCounts count_family(const CircuitFamily& family) {
  FamilyCounts fc;
  for (int k : family.lengths()) {
    if (k == 2) ++fc.c2;
    else if (k == 3) ++fc.c3;
    else if (k == 4) ++fc.c4;
    else if (k % 2 == 0) fc.evens6.push_back(k);
    else fc.odds5.push_back(k);
  }
  return fc;
}

}  // namespace

SingleCircuitGdl label_single_circuit_info(int k) {
  if (k == 3) throw UnsupportedError("C3 has no gdl");
  if (k < 2) throw std::invalid_argument("circuit length must be >= 2");
  std::vector<int> f(k + 1, 0);  // 1-based vertex indexing
  int sign = 0;
  const int p = k / 4;
  switch (k % 4) {
    case 0:
      for (int i = 0; i <= 2 * p - 2; ++i) f[2 * i + 1] = i + 1;
      for (int i = 1; i <= 2 * p - 2; ++i) f[2 * i] = 4 * p + 1 - i;
      f[4 * p - 2] = 2 * p + 1;
      f[4 * p - 1] = 2 * p + 2;
      f[4 * p] = 2 * p;
      sign = p >= 2 ? 1 : 0;
      break;
    case 1:
      for (int i = 0; i <= 2 * p; ++i) f[2 * i + 1] = i + 1;
      for (int i = 1; i <= 2 * p; ++i) f[2 * i] = 4 * p + 2 - i;
      sign = -1;
      break;
    case 2:
      for (int i = 0; i <= 2 * p; ++i) f[2 * i + 1] = i + 1;
      for (int i = 1; i <= 2 * p + 1; ++i) f[2 * i] = 4 * p + 3 - i;
      sign = p >= 1 ? 1 : 0;
      break;
    case 3:
      for (int i = 0; i <= 2 * p - 1; ++i) f[2 * i + 1] = i + 1;
      for (int i = 1; i <= 2 * p; ++i) f[2 * i] = 4 * p + 4 - i;
      f[4 * p + 1] = 2 * p + 2;
      f[4 * p + 2] = 2 * p + 1;
      f[4 * p + 3] = 2 * p + 3;
      sign = -1;
      break;
  }
  Labeling lab{CircuitFamily({k}),
               std::vector<int>(f.begin() + 1, f.end())};
  return SingleCircuitGdl{checked(std::move(lab), "single circuit"), sign};
}

Labeling label_single_circuit(int k) {
  return label_single_circuit_info(k).labeling;
}

Labeling extend_with_two_c4(const Labeling& g) {
  if (!verify_gdl(g).is_gdl)
    throw std::invalid_argument("extension input must be a gdl");
  const int V = g.family.total_vertices();
  std::vector<int> lengths = g.family.lengths();
  lengths.push_back(4);
  lengths.push_back(4);
  std::vector<int> labels;
  labels.reserve(V + 8);
  for (int v : g.labels) labels.push_back(v + 4);
  labels.insert(labels.end(), {1, V + 8, 2, V + 6});
  labels.insert(labels.end(), {3, V + 5, 4, V + 7});
  return checked(Labeling{CircuitFamily(lengths), std::move(labels)},
                 "two C4 extension");
}

Labeling extend_with_even_circuit(const Labeling& g, int two_k) {
  if (two_k < 2 || two_k % 2 != 0)
    throw std::invalid_argument("extension circuit length must be even");
  if (two_k == 4)
    throw UnsupportedError(
        "length-4 circuits extend only in pairs; use extend_with_two_c4");
  if (!verify_gdl(g).is_gdl)
    throw std::invalid_argument("extension input must be a gdl");
  const int V = g.family.total_vertices();
  const int k = two_k / 2;
  std::vector<int> lengths = g.family.lengths();
  lengths.push_back(two_k);
  std::vector<int> labels;
  labels.reserve(V + two_k);
  for (int v : g.labels) labels.push_back(v + k);
  std::vector<int> f(two_k + 1, 0);
  for (int i = 1; i <= k; ++i) f[2 * i - 1] = k - i + 1;
  if (k % 2 == 1) {
    for (int i = 1; i <= k; ++i) f[2 * i] = V + k + i;
  } else {
    for (int i = 1; i <= k - 3; ++i) f[2 * i] = V + k + i;
    f[2 * k - 4] = V + 2 * k;
    f[2 * k - 2] = V + 2 * k - 2;
    f[2 * k] = V + 2 * k - 1;
  }
  labels.insert(labels.end(), f.begin() + 1, f.end());
  return checked(Labeling{CircuitFamily(lengths), std::move(labels)},
                 "even circuit extension");
}

Labeling label_fixed_base(const FixedBaseKind& kind) {
  switch (kind.tag) {
    case FixedBaseKind::Tag::TwoC2PlusC3:
      return checked(
          Labeling{CircuitFamily({2, 2, 3}), {1, 6, 3, 7, 2, 4, 5}},
          "2C2+C3 base");
    case FixedBaseKind::Tag::CkPlusC3: {
      if (kind.k < 5)
        throw std::invalid_argument("C_k+C3 base needs k >= 5");
      const SingleCircuitGdl base = label_single_circuit_info(kind.k);
      return checked(attach_c3(base.labeling, base.magnitude1_sign),
                     "C_k+C3 base");
    }
    case FixedBaseKind::Tag::TwoC4PlusC3:
      // The 2C4 labeling has exactly one magnitude-1 arc (sign -1), so the
      // C_k+C3 recipe applies to it unchanged.
      return checked(attach_c3(two_c4_from_empty(), -1), "2C4+C3 base");
    case FixedBaseKind::Tag::C4PlusOdd: {
      const int odd = kind.k;
      if (odd < 3 || odd % 2 == 0)
        throw std::invalid_argument("C4+C_odd base needs an odd length >= 3");
      const int half = (odd - 1) / 2;  // >= 1
      std::vector<int> labels;
      if (half % 2 == 1) {
        // C_n labels for n = 2*half+5 vertices (the 4p+3 layout); the C4
        // sits on (v1, v_{n-2}, v_{n-1}, v_n).
        const int n = odd + 4;
        const std::vector<int>& f = label_single_circuit(n).labels;
        labels = {f[0], f[n - 3], f[n - 2], f[n - 1]};
        labels.insert(labels.end(), f.begin() + 1, f.end() - 3);
      } else {
        // C_{2k+4} labels (the 4p layout) plus one extra vertex labeled
        // 2k+5; the C4 sits on (v1, v_{2k+2}, v_{2k+3}, v_{2k+4}).
        const int even_n = odd + 3;
        const std::vector<int>& f = label_single_circuit(even_n).labels;
        labels = {f[0], f[even_n - 3], f[even_n - 2], f[even_n - 1]};
        labels.insert(labels.end(), f.begin() + 1, f.end() - 3);
        labels.push_back(even_n + 1);
      }
      return checked(Labeling{CircuitFamily({4, odd}), std::move(labels)},
                     "C4+C_odd base");
    }
  }
  throw std::invalid_argument("unknown fixed base kind");
}

std::string ConstructionPlan::base_name() const {
  switch (base) {
    case Base::Empty: return "empty";
    case Base::SingleCircuit:
      return "single_circuit(" + std::to_string(base_param) + ")";
    case Base::TwoC2PlusC3: return "two_c2_plus_c3";
    case Base::C4PlusOdd:
      return "c4_plus_odd(" + std::to_string(base_param) + ")";
    case Base::CkPlusC3:
      return "ck_plus_c3(" + std::to_string(base_param) + ")";
    case Base::TwoC4PlusC3: return "two_c4_plus_c3";
    case Base::NC3: return "n_c3(" + std::to_string(base_param) + ")";
    case Base::C4PlusNC3:
      return "c4_plus_n_c3(" + std::to_string(base_param) + ")";
  }
  return "?";
}

bool is_exception_family(const CircuitFamily& family) {
  const std::vector<int> s = family.sorted_lengths();
  return s == std::vector<int>{3} || s == std::vector<int>{2, 3};
}

bool within_constructive_coverage(const CircuitFamily& family) {
  int odd = 0;
  int odd5 = 0;
  for (int k : family.lengths()) {
    odd += k % 2;
    odd5 += k % 2 == 1 && k >= 5;
  }
  return odd <= 1 || odd5 == 0;
}

std::optional<ConstructionPlan> plan_family(const CircuitFamily& family) {
  if (is_exception_family(family) || !within_constructive_coverage(family))
    return std::nullopt;
  const FamilyCounts fc = count_family(family);
  std::multiset<int> remaining(family.lengths().begin(),
                               family.lengths().end());
  auto consume = [&remaining](std::initializer_list<int> lengths) {
    for (int k : lengths) remaining.erase(remaining.find(k));
  };

  ConstructionPlan plan;
  using Base = ConstructionPlan::Base;
  if (fc.odds5.size() == 1) {
    // c3 == 0 here; two odds would have failed the hypothesis.
    const int odd = fc.odds5.front();
    if (fc.c4 % 2 == 1) {
      plan.base = Base::C4PlusOdd;
      plan.base_param = odd;
      consume({4, odd});
    } else {
      plan.base = Base::SingleCircuit;
      plan.base_param = odd;
      consume({odd});
    }
  } else if (fc.c3 >= 2) {
    plan.base = fc.c4 % 2 == 1 ? Base::C4PlusNC3 : Base::NC3;
    plan.base_param = fc.c3;
    for (int i = 0; i < fc.c3; ++i) consume({3});
    if (fc.c4 % 2 == 1) consume({4});
  } else if (fc.c3 == 1) {
    if (fc.c4 % 2 == 1) {
      plan.base = Base::C4PlusNC3;
      plan.base_param = 1;
      consume({3, 4});
    } else if (fc.c2 >= 2) {
      plan.base = Base::TwoC2PlusC3;
      consume({2, 2, 3});
    } else if (!fc.evens6.empty()) {
      plan.base = Base::CkPlusC3;
      plan.base_param = *std::max_element(fc.evens6.begin(), fc.evens6.end());
      consume({plan.base_param, 3});
    } else if (fc.c4 >= 2) {
      plan.base = Base::TwoC4PlusC3;
      consume({3, 4, 4});
    } else {
      return std::nullopt;  // only {3} and {2,3} reach here; both excepted
    }
  } else {
    // all-even family
    if (fc.c4 % 2 == 1) {
      plan.base = Base::SingleCircuit;
      plan.base_param = 4;
      consume({4});
    } else if (!fc.evens6.empty()) {
      plan.base = Base::SingleCircuit;
      plan.base_param = *std::max_element(fc.evens6.begin(), fc.evens6.end());
      consume({plan.base_param});
    } else if (fc.c2 >= 1) {
      plan.base = Base::SingleCircuit;
      plan.base_param = 2;
      consume({2});
    } else {
      plan.base = Base::Empty;  // zero or an even number of C4s
    }
  }

  // Extensions: paired C4s first, then the other evens in decreasing length.
  const int fours = static_cast<int>(remaining.count(4));
  if (fours % 2 != 0)
    throw std::logic_error("planner left an unpaired C4");
  for (int i = 0; i < fours / 2; ++i)
    plan.extensions.push_back({true, 0});
  std::vector<int> rest;
  for (int k : remaining)
    if (k != 4) rest.push_back(k);
  std::sort(rest.rbegin(), rest.rend());
  for (int k : rest) {
    if (k % 2 != 0) throw std::logic_error("planner left an odd circuit");
    plan.extensions.push_back({false, k});
  }
  return plan;
}

PlanExecution execute_plan(const ConstructionPlan& plan) {
  PlanExecution exec;
  using Base = ConstructionPlan::Base;
  switch (plan.base) {
    case Base::Empty:
      exec.labeling = Labeling{CircuitFamily(std::vector<int>{}), {}};
      break;
    case Base::SingleCircuit:
      exec.labeling = label_single_circuit(plan.base_param);
      break;
    case Base::TwoC2PlusC3:
      exec.labeling = label_fixed_base(FixedBaseKind::two_c2_plus_c3());
      break;
    case Base::C4PlusOdd:
      exec.labeling = label_fixed_base(FixedBaseKind::c4_plus_odd(plan.base_param));
      break;
    case Base::CkPlusC3:
      exec.labeling = label_fixed_base(FixedBaseKind::ck_plus_c3(plan.base_param));
      break;
    case Base::TwoC4PlusC3:
      exec.labeling = label_fixed_base(FixedBaseKind::two_c4_plus_c3());
      break;
    case Base::NC3: {
      NC3Result r = label_n_c3_with_trace(plan.base_param);
      exec.labeling = std::move(r.labeling);
      exec.trace.stages = std::move(r.stages);
      break;
    }
    case Base::C4PlusNC3: {
      NC3Result r = label_c4_plus_n_c3_with_trace(plan.base_param);
      exec.labeling = std::move(r.labeling);
      exec.trace.stages = std::move(r.stages);
      break;
    }
  }
  exec.trace.base = plan.base_name();
  for (const auto& ext : plan.extensions) {
    if (ext.add_two_c4) {
      exec.labeling = extend_with_two_c4(exec.labeling);
      exec.trace.extensions.push_back("add_two_c4");
    } else {
      exec.labeling = extend_with_even_circuit(exec.labeling, ext.even_length);
      exec.trace.extensions.push_back("add_even_circuit(" +
                                      std::to_string(ext.even_length) + ")");
    }
  }
  return exec;
}

Certificate plan_and_construct(const CircuitFamily& family,
                               const PlanOptions& options) {
  if (is_exception_family(family)) {
    Certificate cert;
    cert.status = CertStatus::Unsupported;
    cert.exception = true;
    cert.reason = family.total_vertices() == 3 ? "C3 has no gdl"
                                               : "C2+C3 has no gdl";
    return cert;
  }
  if (const auto plan = plan_family(family)) {
    PlanExecution exec = execute_plan(*plan);
    Labeling final = reorder_circuits(exec.labeling, family);
    if (!verify_gdl(final).is_gdl)
      throw std::logic_error("planned construction failed verification for " +
                             exec.trace.base);
    Certificate cert;
    cert.status = CertStatus::Gdl;
    cert.labeling = std::move(final);
    cert.trace = std::move(exec.trace);
    return cert;
  }
  if (!options.search_fallback) {
    Certificate cert;
    cert.status = CertStatus::Unsupported;
    cert.reason =
        "outside the constructive coverage (two or more odd circuits with one "
        "of length >= 5); search fallback disabled";
    return cert;
  }
  SearchOptions sopt;
  sopt.parallel = options.parallel_search;
  sopt.allow_unbounded = family.total_vertices() <= 12;
  return search_gdl(family, options.budget, {}, sopt);
}

}  // namespace gdl
