#include "gdl/survey.hpp"

#include <chrono>

#include "gdl/constructions.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gdl {

std::vector<std::vector<int>> enumerate_families(int max_vertices) {
  std::vector<std::vector<int>> out;
  std::vector<int> parts;
  for (int total = 2; total <= max_vertices; ++total) {
    auto rec = [&](auto&& self, int remaining, int min_part) -> void {
      if (remaining == 0) {
        out.push_back(parts);
        return;
      }
      for (int p = min_part; p <= remaining; ++p) {
        if (remaining - p == 1) continue;  // no length-1 circuits
        parts.push_back(p);
        self(self, remaining - p, p);
        parts.pop_back();
      }
    };
    rec(rec, total, 2);
  }
  return out;
}

namespace {

SurveyRow survey_one(const std::vector<int>& lengths,
                     const SearchBudget& budget) {
  SurveyRow row;
  row.family = lengths;
  const auto start = std::chrono::steady_clock::now();
  PlanOptions opt;
  opt.search_fallback = true;
  opt.budget = budget;
  const Certificate cert = plan_and_construct(CircuitFamily(lengths), opt);
  row.elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  switch (cert.status) {
    case CertStatus::Gdl: {
      row.status = cert.trace ? "constructed" : "searched-found";
      const VerificationReport rep = verify_gdl(*cert.labeling);
      if (!rep.is_gdl)
        throw std::logic_error("survey row failed re-verification");
      row.max_magnitude = rep.max_magnitude;
      break;
    }
    case CertStatus::NoGdlExhaustive:
      row.status = "no-gdl";
      break;
    case CertStatus::Timeout:
      row.status = "open-timeout";
      break;
    case CertStatus::Unsupported:
      row.status = cert.exception ? "exception" : "open-timeout";
      break;
  }
  return row;
}

}  // namespace

SurveyReport run_survey(int max_vertices, const SearchBudget& budget,
                        int jobs) {
  if (max_vertices < 2)
    throw std::invalid_argument("survey needs max_vertices >= 2");
  SurveyReport report;
  report.max_vertices = max_vertices;
  report.budget = budget;
  const std::vector<std::vector<int>> families =
      enumerate_families(max_vertices);
  report.rows.resize(families.size());
  const int count = static_cast<int>(families.size());
#ifdef _OPENMP
  if (jobs <= 0) jobs = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
#endif
  for (int i = 0; i < count; ++i)
    report.rows[i] = survey_one(families[i], budget);
  for (const SurveyRow& row : report.rows) {
    ++report.summary[row.status];
    if (row.status == "no-gdl")
      report.conjecture_counterexamples.push_back(row.family);
  }
  return report;
}

}  // namespace gdl
