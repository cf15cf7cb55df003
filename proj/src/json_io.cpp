#include "gdl/json_io.hpp"

#include <sstream>

#include "gdl/family_spec.hpp"

namespace gdl {
namespace {

ordered_json stage_to_json(const TriangleStage& stage) {
  ordered_json j;
  j["n"] = stage.n;
  j["case"] = std::string(1, stage.case_tag);
  j["t"] = stage.t;
  j["r"] = stage.r;
  j["theta"] = stage.theta;
  j["flipped_pairs"] = stage.flipped_pairs;
  j["sub_block_flipped"] = stage.sub_block_flipped;
  j["flipped_triangles"] = stage.flipped_triangles;
  j["fallback_used"] = stage.fallback_used;
  if (stage.fallback_used) j["fallback_flips"] = stage.fallback_flips;
  return j;
}

ordered_json search_to_json(const SearchStats& stats) {
  ordered_json j;
  j["nodes"] = stats.nodes;
  j["seconds"] = stats.seconds;
  j["symmetry"] = stats.symmetry;
  j["symmetry_factor"] = stats.symmetry_factor;
  j["threads"] = stats.threads;
  return j;
}

}  // namespace

ordered_json labeling_to_json(const Labeling& labeling) {
  ordered_json j;
  j["circuits"] = labeling.family.lengths();
  j["labels"] = labeling.labels;
  return j;
}

Labeling labeling_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("circuits") || !j.contains("labels"))
    throw std::invalid_argument(
        "labeling document needs 'circuits' and 'labels' arrays");
  std::vector<int> circuits;
  std::vector<int> labels;
  try {
    circuits = j.at("circuits").get<std::vector<int>>();
    labels = j.at("labels").get<std::vector<int>>();
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("malformed labeling document: ") +
                                e.what());
  }
  CircuitFamily family(circuits);
  if (static_cast<int>(labels.size()) != family.total_vertices())
    throw std::invalid_argument("label count does not match the family");
  return Labeling{std::move(family), std::move(labels)};
}

ordered_json report_to_json(const VerificationReport& report) {
  ordered_json j;
  j["is_bijection"] = report.is_bijection;
  j["is_gdl"] = report.is_gdl;
  j["difference_labels"] = report.difference_labels;
  j["max_magnitude"] = report.max_magnitude;
  ordered_json counts = ordered_json::object();
  for (const auto& [mag, count] : report.magnitude_counts)
    counts[std::to_string(mag)] = count;
  j["magnitude_counts"] = counts;
  ordered_json dups = ordered_json::array();
  for (const auto& [a, b] : report.duplicate_pairs)
    dups.push_back(ordered_json::array({a, b}));
  j["duplicate_pairs"] = dups;
  return j;
}

ordered_json certificate_to_json(const Certificate& cert,
                                 const CircuitFamily& family) {
  ordered_json j;
  j["status"] = to_string(cert.status);
  j["family"] = family.lengths();
  if (cert.exception) j["exception"] = true;
  if (!cert.reason.empty()) j["reason"] = cert.reason;
  if (cert.labeling) j["labeling"] = labeling_to_json(*cert.labeling);
  if (cert.trace) {
    ordered_json prov;
    prov["base"] = cert.trace->base;
    prov["extensions"] = cert.trace->extensions;
    if (!cert.trace->stages.empty()) {
      ordered_json stages = ordered_json::array();
      for (const auto& s : cert.trace->stages) stages.push_back(stage_to_json(s));
      prov["stages"] = stages;
    }
    j["provenance"] = prov;
  }
  if (cert.search) j["search"] = search_to_json(*cert.search);
  if (cert.status == CertStatus::Timeout) {
    ordered_json budget;
    budget["nodes"] = cert.budget_nodes;
    budget["seconds"] = cert.budget_seconds;
    j["budget"] = budget;
  }
  return j;
}

ordered_json survey_to_json(const SurveyReport& report) {
  ordered_json j;
  j["max_vertices"] = report.max_vertices;
  ordered_json budget;
  budget["nodes"] = report.budget.max_nodes;
  budget["seconds"] = report.budget.max_seconds;
  budget["canonical"] = report.budget.canonical;
  j["budget"] = budget;
  ordered_json rows = ordered_json::array();
  for (const SurveyRow& row : report.rows) {
    ordered_json r;
    r["family"] = row.family;
    r["status"] = row.status;
    r["max_magnitude"] = row.max_magnitude;
    r["elapsed"] = row.elapsed;
    rows.push_back(r);
  }
  j["rows"] = rows;
  ordered_json summary = ordered_json::object();
  for (const auto& [status, count] : report.summary) summary[status] = count;
  j["summary"] = summary;
  j["conjecture_counterexamples"] = report.conjecture_counterexamples;
  return j;
}

std::string report_to_text(const VerificationReport& report) {
  std::ostringstream out;
  out << (report.is_gdl ? "gdl: yes" : "gdl: no") << '\n';
  out << "bijection: " << (report.is_bijection ? "yes" : "no") << '\n';
  out << "difference labels:";
  for (int d : report.difference_labels) out << ' ' << d;
  out << '\n';
  out << "max magnitude: " << report.max_magnitude << '\n';
  if (!report.duplicate_pairs.empty()) {
    out << "duplicate arcs:";
    for (const auto& [a, b] : report.duplicate_pairs)
      out << " (" << a << "," << b << ")";
    out << '\n';
  }
  return out.str();
}

std::string certificate_to_text(const Certificate& cert,
                                const CircuitFamily& family) {
  std::ostringstream out;
  out << "family: " << family_to_string(family) << '\n';
  out << "status: " << to_string(cert.status) << '\n';
  if (cert.exception) out << "known exception: yes\n";
  if (!cert.reason.empty()) out << "reason: " << cert.reason << '\n';
  if (cert.labeling) {
    out << "labels:";
    for (int v : cert.labeling->labels) out << ' ' << v;
    out << '\n';
    out << "max magnitude: " << verify_gdl(*cert.labeling).max_magnitude
        << '\n';
  }
  if (cert.trace) {
    out << "base: " << cert.trace->base << '\n';
    if (!cert.trace->extensions.empty()) {
      out << "extensions:";
      for (const auto& e : cert.trace->extensions) out << ' ' << e;
      out << '\n';
    }
    for (const auto& s : cert.trace->stages) {
      out << "stage n=" << s.n << " case " << s.case_tag << " (t=" << s.t
          << ", r=" << s.r << ", theta=" << s.theta << ") flips:";
      for (int p : s.flipped_pairs) out << " pi_" << p;
      if (s.sub_block_flipped) out << " sub-block";
      if (s.fallback_used) out << " [fallback x" << s.fallback_flips << "]";
      out << '\n';
    }
  }
  if (cert.search) {
    out << "search: nodes=" << cert.search->nodes
        << " seconds=" << cert.search->seconds
        << " symmetry_factor=" << cert.search->symmetry_factor
        << " threads=" << cert.search->threads << '\n';
  }
  return out.str();
}

std::string survey_to_text(const SurveyReport& report) {
  std::ostringstream out;
  out << "survey up to " << report.max_vertices << " vertices, "
      << report.rows.size() << " families\n";
  for (const SurveyRow& row : report.rows) {
    out << "  " << family_to_string(CircuitFamily(row.family)) << ": "
        << row.status;
    if (row.status == "constructed" || row.status == "searched-found")
      out << " (max magnitude " << row.max_magnitude << ")";
    out << '\n';
  }
  out << "summary:";
  for (const auto& [status, count] : report.summary)
    out << ' ' << status << '=' << count;
  out << '\n';
  if (!report.conjecture_counterexamples.empty()) {
    out << "CONJECTURE COUNTEREXAMPLES FOUND:";
    for (const auto& fam : report.conjecture_counterexamples)
      out << ' ' << family_to_string(CircuitFamily(fam));
    out << '\n';
  }
  return out.str();
}

}  // namespace gdl
