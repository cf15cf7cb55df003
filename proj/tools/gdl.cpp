// Command-line front end: construct, verify, search, catalog, survey.
// JSON output by default (--text for tables). Exit codes: 0 = gdl found /
// labeling verified, 2 = certified non-existence (or labeling is not a gdl),
// 3 = unsupported or budget exhausted, 1 = usage/schema/internal errors.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gdl/catalog.hpp"
#include "gdl/constructions.hpp"
#include "gdl/core.hpp"
#include "gdl/family_spec.hpp"
#include "gdl/json_io.hpp"
#include "gdl/search.hpp"
#include "gdl/survey.hpp"

namespace {

using gdl::ordered_json;

int exit_code_for(const gdl::Certificate& cert) {
  switch (cert.status) {
    case gdl::CertStatus::Gdl: return 0;
    case gdl::CertStatus::NoGdlExhaustive: return 2;
    case gdl::CertStatus::Unsupported: return cert.exception ? 2 : 3;
    case gdl::CertStatus::Timeout: return 3;
  }
  return 1;
}

void emit_certificate(const gdl::Certificate& cert,
                      const gdl::CircuitFamily& family, bool text) {
  if (text)
    std::cout << gdl::certificate_to_text(cert, family);
  else
    std::cout << gdl::certificate_to_json(cert, family).dump(2) << '\n';
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CommonFlags {
  bool text = false;
  std::string catalog_path;
  double budget_seconds = 0.0;
  std::uint64_t budget_nodes = 0;
  bool canonical = false;
  bool parallel = false;
};

void apply_catalog_path(const CommonFlags& flags) {
  if (!flags.catalog_path.empty())
    gdl::Catalog::instance().set_path(flags.catalog_path);
}

int cmd_construct(const std::string& spec, const CommonFlags& flags,
                  bool with_search) {
  const gdl::CircuitFamily family = gdl::parse_family_spec(spec);
  apply_catalog_path(flags);
  gdl::PlanOptions options;
  options.search_fallback = with_search;
  options.budget.max_seconds = flags.budget_seconds;
  options.budget.max_nodes = flags.budget_nodes;
  options.budget.canonical = flags.canonical;
  options.parallel_search = flags.parallel;
  const gdl::Certificate cert = gdl::plan_and_construct(family, options);
  emit_certificate(cert, family, flags.text);
  return exit_code_for(cert);
}

int cmd_verify(const std::string& path, bool text) {
  ordered_json doc = ordered_json::parse(read_input(path), nullptr, false);
  if (doc.is_discarded())
    throw std::invalid_argument("input is not valid JSON");
  // accept a bare labeling document or a certificate wrapping one
  if (doc.is_object() && doc.contains("labeling")) doc = doc.at("labeling");
  const gdl::Labeling labeling = gdl::labeling_from_json(doc);
  const gdl::VerificationReport report = gdl::verify_gdl(labeling);
  if (text)
    std::cout << gdl::report_to_text(report);
  else
    std::cout << gdl::report_to_json(report).dump(2) << '\n';
  return report.is_gdl ? 0 : 2;
}

int cmd_search(const std::string& spec, const CommonFlags& flags,
               bool no_symmetry, bool force_unbounded, int max_magnitude,
               int max_at_limit) {
  const gdl::CircuitFamily family = gdl::parse_family_spec(spec);
  gdl::SearchBudget budget;
  budget.max_seconds = flags.budget_seconds;
  budget.max_nodes = flags.budget_nodes;
  budget.canonical = flags.canonical;
  gdl::SearchOptions options;
  options.use_symmetry = !no_symmetry;
  options.parallel = flags.parallel;
  options.allow_unbounded = force_unbounded;
  std::optional<gdl::MagnitudeProfile> profile;
  if (max_magnitude > 0)
    profile = gdl::MagnitudeProfile{max_magnitude, max_at_limit};
  const gdl::Certificate cert =
      gdl::search_gdl(family, budget, profile, options);
  emit_certificate(cert, family, flags.text);
  return exit_code_for(cert);
}

int cmd_catalog(const CommonFlags& flags, std::string output, bool check) {
  if (output.empty()) output = gdl::default_catalog_path();
  if (check) {
    const auto entries = gdl::load_catalog(output);
    ordered_json j;
    j["path"] = output;
    if (!entries) {
      j["valid"] = false;
      j["reason"] = "missing or unparsable";
      std::cout << j.dump(2) << '\n';
      return 1;
    }
    int bad = 0;
    for (const auto& e : *entries) bad += !gdl::catalog_entry_valid(e);
    j["entries"] = entries->size();
    j["invalid_entries"] = bad;
    j["valid"] = bad == 0;
    std::cout << j.dump(2) << '\n';
    return bad == 0 ? 0 : 1;
  }
  apply_catalog_path(flags);
  const auto entries = gdl::generate_catalog(output);
  ordered_json j;
  j["path"] = output;
  j["entries"] = entries.size();
  int lemma7 = 0;
  for (const auto& e : entries) lemma7 += e.profile == "lemma7";
  j["lemma7_entries"] = lemma7;
  j["plain_entries"] = entries.size() - lemma7;
  j["generator"] = gdl::kCatalogGeneratorVersion;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_survey(int max_vertices, const CommonFlags& flags,
               const std::string& output, int jobs) {
  apply_catalog_path(flags);
  gdl::SearchBudget budget;
  budget.max_seconds = flags.budget_seconds;
  budget.max_nodes = flags.budget_nodes;
  const gdl::SurveyReport report = gdl::run_survey(max_vertices, budget, jobs);
  const std::string rendered =
      flags.text ? gdl::survey_to_text(report)
                 : gdl::survey_to_json(report).dump(2) + "\n";
  if (output.empty() || output == "-") {
    std::cout << rendered;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + output);
    out << rendered;
  }
  if (!report.conjecture_counterexamples.empty())
    std::cerr << "warning: no-gdl families beyond the two known exceptions\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graceful difference labelings of disjoint circuit unions"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string family_spec;
  std::string input_path = "-";
  std::string output_path;
  bool with_search = false;
  bool no_symmetry = false;
  bool force_unbounded = false;
  bool check_only = false;
  int max_magnitude = 0;
  int max_at_limit = 1;
  int max_vertices = 0;
  int jobs = 0;
  bool budget_given = false;

  bool json_flag = false;  // JSON is already the default; kept for symmetry
  auto add_json = [&json_flag, &flags](CLI::App* cmd) {
    CLI::Option* j = cmd->add_flag("--json", json_flag, "JSON output (default)");
    CLI::Option* t = cmd->add_flag("--text", flags.text, "human-readable output");
    j->excludes(t);
  };
  auto add_budgets = [&](CLI::App* cmd) {
    cmd->add_option("--budget-seconds", flags.budget_seconds,
                    "wall-clock budget per search (0 = unlimited)")
        ->each([&](const std::string&) { budget_given = true; });
    cmd->add_option("--budget-nodes", flags.budget_nodes,
                    "node budget per search (0 = unlimited)")
        ->each([&](const std::string&) { budget_given = true; });
  };

  CLI::App* construct =
      app.add_subcommand("construct", "build a gdl by the closed-form constructions");
  construct->add_option("family", family_spec, "e.g. \"3,3,4\" or \"2*C3+C4\"")
      ->required();
  construct->add_flag("--search", with_search,
                      "fall back to exhaustive search outside coverage");
  construct->add_flag("--canonical", flags.canonical,
                      "canonical (lex-smallest) search results");
  construct->add_flag("--parallel", flags.parallel, "parallel search fallback");
  construct->add_option("--catalog-path", flags.catalog_path,
                        "catalog file (env GDL_CATALOG)");
  add_json(construct);
  add_budgets(construct);

  CLI::App* verify =
      app.add_subcommand("verify", "verify a labeling JSON document");
  verify->add_option("input", input_path, "labeling file, or - for stdin");
  add_json(verify);

  CLI::App* search =
      app.add_subcommand("search", "exhaustive backtracking search");
  search->add_option("family", family_spec, "family description")->required();
  search->add_flag("--canonical", flags.canonical,
                   "return the lexicographically smallest gdl");
  search->add_flag("--no-symmetry", no_symmetry, "disable symmetry reduction");
  search->add_flag("--parallel", flags.parallel, "OpenMP frontier split");
  search->add_flag("--force-unbounded", force_unbounded,
                   "allow unbounded search beyond 12 vertices");
  search->add_option("--max-magnitude", max_magnitude,
                     "forbid difference labels above this magnitude");
  search->add_option("--max-at-limit", max_at_limit,
                     "arcs allowed at the magnitude limit (default 1)");
  add_json(search);
  add_budgets(search);

  CLI::App* catalog =
      app.add_subcommand("catalog", "generate or check the base-case catalog");
  catalog->add_option("--output", output_path,
                      "catalog path (default: beside the executable)");
  catalog->add_flag("--check", check_only, "validate an existing catalog");
  catalog->add_option("--catalog-path", flags.catalog_path,
                      "catalog file consulted before regenerating");

  CLI::App* survey = app.add_subcommand(
      "survey", "enumerate all families up to a vertex budget");
  survey->add_option("max_vertices", max_vertices, "total-vertex bound")
      ->required()
      ->check(CLI::Range(2, 1000));
  survey->add_option("--output", output_path, "report file (default stdout)");
  survey->add_option("--jobs", jobs, "worker threads (0 = auto)");
  survey->add_option("--catalog-path", flags.catalog_path,
                     "catalog file (env GDL_CATALOG)");
  add_json(survey);
  add_budgets(survey);

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) {
      if (!budget_given) {  // desk-scale default for the search fallback
        flags.budget_seconds = 10.0;
        flags.budget_nodes = 100000000ULL;
      }
      return cmd_construct(family_spec, flags, with_search);
    }
    if (verify->parsed()) return cmd_verify(input_path, flags.text);
    if (search->parsed())
      return cmd_search(family_spec, flags, no_symmetry, force_unbounded,
                        max_magnitude, max_at_limit);
    if (catalog->parsed()) return cmd_catalog(flags, output_path, check_only);
    if (survey->parsed()) {
      if (!budget_given) {
        flags.budget_seconds = 10.0;
        flags.budget_nodes = 100000000ULL;
      }
      return cmd_survey(max_vertices, flags, output_path, jobs);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
