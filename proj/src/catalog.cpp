#include "gdl/catalog.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

#include "gdl/search.hpp"
#include "json.hpp"

namespace gdl {
namespace {

using json = nlohmann::ordered_json;

std::vector<int> n_c3_lengths(int n) { return std::vector<int>(n, 3); }

std::vector<int> c4_n_c3_lengths(int n) {
  std::vector<int> lengths(n, 3);
  lengths.push_back(4);
  return lengths;
}

std::optional<MagnitudeProfile> profile_for(const std::string& name, int n3) {
  if (name == "lemma7") return MagnitudeProfile{3 * n3 - 2, 1};
  return std::nullopt;
}

int triangle_count(const std::vector<int>& family) {
  int n3 = 0;
  for (int k : family) n3 += k == 3;
  return n3;
}

CatalogEntry search_entry(const std::vector<int>& family,
                          const std::string& profile) {
  SearchBudget budget;
  budget.canonical = true;
  SearchOptions opt;
  opt.allow_unbounded = true;
  // Canonical-mode results are timing-independent, so the parallel kernel
  // still yields the lexicographically smallest labeling.
  opt.parallel = true;
  const Certificate cert = search_gdl(
      CircuitFamily(family), budget, profile_for(profile, triangle_count(family)),
      opt);
  if (cert.status != CertStatus::Gdl)
    throw std::logic_error("catalog entry infeasible: search found no gdl");
  return CatalogEntry{family, cert.labeling->labels, profile,
                      kCatalogGeneratorVersion};
}

json entry_to_json(const CatalogEntry& e) {
  json j;
  j["family"] = e.family;
  j["labels"] = e.labels;
  j["profile"] = e.profile;
  j["generator"] = e.generator;
  return j;
}

std::optional<CatalogEntry> entry_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j.contains("labels") ||
      !j.contains("profile") || !j.contains("generator"))
    return std::nullopt;
  try {
    CatalogEntry e;
    e.family = j.at("family").get<std::vector<int>>();
    e.labels = j.at("labels").get<std::vector<int>>();
    e.profile = j.at("profile").get<std::string>();
    e.generator = j.at("generator").get<std::string>();
    return e;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

struct CatalogState {
  std::mutex mu;
  std::string path_override;
  bool load_attempted = false;
  std::map<std::vector<int>, CatalogEntry> cache;  // keyed by family lengths
};

CatalogState& state() {
  static CatalogState s;
  return s;
}

void load_file_locked(CatalogState& s) {
  if (s.load_attempted) return;
  s.load_attempted = true;
  const std::string path =
      s.path_override.empty() ? default_catalog_path() : s.path_override;
  auto entries = load_catalog(path);
  if (!entries) return;
  for (auto& e : *entries)
    if (catalog_entry_valid(e)) s.cache.emplace(e.family, e);
}

}  // namespace

bool catalog_entry_valid(const CatalogEntry& entry) {
  try {
    const CircuitFamily fam(entry.family);
    const Labeling lab{fam, entry.labels};
    const VerificationReport rep = verify_gdl(lab);
    if (!rep.is_gdl) return false;
    if (entry.profile == "plain") return true;
    if (entry.profile != "lemma7") return false;
    const int limit = 3 * triangle_count(entry.family) - 2;
    if (rep.max_magnitude > limit) return false;
    const auto it = rep.magnitude_counts.find(limit);
    return it == rep.magnitude_counts.end() || it->second <= 1;
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<CatalogEntry> generate_catalog_entries() {
  std::vector<CatalogEntry> entries;
  for (int n = 2; n <= 9; ++n)
    entries.push_back(search_entry(n_c3_lengths(n), "lemma7"));
  for (int n = 2; n <= 8; ++n)
    entries.push_back(search_entry(c4_n_c3_lengths(n), "plain"));
  return entries;
}

std::vector<CatalogEntry> generate_catalog(const std::string& path) {
  std::vector<CatalogEntry> entries = generate_catalog_entries();
  save_catalog(path, entries);
  // Future lookups reuse what was just generated.
  CatalogState& s = state();
  std::lock_guard<std::mutex> lock(s.mu);
  for (const auto& e : entries) s.cache[e.family] = e;
  return entries;
}

std::optional<std::vector<CatalogEntry>> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) return std::nullopt;
  std::vector<CatalogEntry> entries;
  for (const auto& j : doc) {
    auto e = entry_from_json(j);
    if (!e) return std::nullopt;
    entries.push_back(std::move(*e));
  }
  return entries;
}

void save_catalog(const std::string& path,
                  const std::vector<CatalogEntry>& entries) {
  json doc = json::array();
  for (const auto& e : entries) doc.push_back(entry_to_json(e));
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open catalog file for writing: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("catalog write failed: " + path);
}

std::string default_catalog_path() {
  if (const char* env = std::getenv("GDL_CATALOG"); env && *env) return env;
  std::error_code ec;
  const auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) return (exe.parent_path() / "gdl_catalog.json").string();
  return "gdl_catalog.json";
}

Catalog& Catalog::instance() {
  static Catalog c;
  return c;
}

void Catalog::set_path(std::string path) {
  CatalogState& s = state();
  std::lock_guard<std::mutex> lock(s.mu);
  s.path_override = std::move(path);
  s.load_attempted = false;
  s.cache.clear();
}

Labeling Catalog::lookup(const std::vector<int>& family, bool lemma7_profile) {
  CatalogState& s = state();
  std::lock_guard<std::mutex> lock(s.mu);
  load_file_locked(s);
  auto it = s.cache.find(family);
  if (it == s.cache.end()) {
    CatalogEntry e = search_entry(family, lemma7_profile ? "lemma7" : "plain");
    it = s.cache.emplace(family, std::move(e)).first;
  }
  return Labeling{CircuitFamily(it->second.family), it->second.labels};
}

Labeling Catalog::n_c3(int n) {
  if (n < 2 || n > 9) throw std::out_of_range("catalog covers n*C3 for n in [2,9]");
  return lookup(n_c3_lengths(n), true);
}

Labeling Catalog::c4_plus_n_c3(int n) {
  if (n < 2 || n > 8)
    throw std::out_of_range("catalog covers C4+n*C3 for n in [2,8]");
  return lookup(c4_n_c3_lengths(n), false);
}

}  // namespace gdl
