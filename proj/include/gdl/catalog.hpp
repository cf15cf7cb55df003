// Base-case catalog: search-generated gdls for small triangle unions.
// Entries cover n*C3 for n in [2,9] under the bounded-magnitude profile
// (at most one arc of magnitude 3n-2, none larger) and C4+n*C3 for n in
// [2,8] as plain gdls. Entries persist as a JSON document; anything loaded
// from disk is re-verified, and missing or invalid entries are regenerated
// by canonical search.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdl/core.hpp"

namespace gdl {

struct CatalogEntry {
  std::vector<int> family;  // circuit lengths, nondecreasing
  std::vector<int> labels;
  std::string profile;    // "lemma7" | "plain"
  std::string generator;  // semver of the generating search
};

inline constexpr const char* kCatalogGeneratorVersion = "1.0.0";

// True when labels form a gdl of the family and satisfy the entry's profile.
bool catalog_entry_valid(const CatalogEntry& entry);

// Fresh deterministic generation of all 8 + 7 entries (canonical search;
// no cache involved).
std::vector<CatalogEntry> generate_catalog_entries();

// Generates all entries and persists them to `path`. Throws on I/O failure.
std::vector<CatalogEntry> generate_catalog(const std::string& path);

std::optional<std::vector<CatalogEntry>> load_catalog(const std::string& path);
void save_catalog(const std::string& path,
                  const std::vector<CatalogEntry>& entries);

// Resolution order: explicit override, then the GDL_CATALOG environment
// variable, then gdl_catalog.json beside the running executable.
std::string default_catalog_path();

// Process-wide lazily populated catalog. Loads the configured file once
// (keeping only entries that re-verify) and generates anything else on
// demand. Thread-safe.
class Catalog {
 public:
  static Catalog& instance();

  void set_path(std::string path);  // override; resets the load state
  Labeling n_c3(int n);             // n in [2,9]
  Labeling c4_plus_n_c3(int n);     // n in [2,8]

 private:
  Labeling lookup(const std::vector<int>& family, bool lemma7_profile);
};

}  // namespace gdl
