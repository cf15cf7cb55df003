#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "brute_force.hpp"
#include "doctest.h"
#include "gdl/catalog.hpp"
#include "gdl/core.hpp"
#include "gdl/search.hpp"

using namespace gdl;

namespace {

Certificate exhaustive(const std::vector<int>& lengths,
                       SearchOptions opt = {}) {
  SearchBudget unlimited;
  opt.allow_unbounded = true;
  return search_gdl(CircuitFamily(lengths), unlimited, {}, opt);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("C3 has no gdl, certified by exhaustion") {
  const Certificate cert = certify_nonexistence(CircuitFamily({3}));
  CHECK(cert.status == CertStatus::NoGdlExhaustive);
  REQUIRE(cert.search.has_value());
  CHECK(cert.search->nodes <= 6);  // at most the 3! raw assignments
}

TEST_CASE("C2+C3 has no gdl, certified by exhaustion") {
  const Certificate cert = certify_nonexistence(CircuitFamily({2, 3}));
  CHECK(cert.status == CertStatus::NoGdlExhaustive);
  CHECK(cert.search->nodes <= 120);  // at most the 5! raw assignments
  CHECK(cert.search->symmetry_factor == doctest::Approx(6.0));  // 2*3 rotations
}

TEST_CASE("2C3 and 2C2 have gdls") {
  const Certificate two_c3 = exhaustive({3, 3});
  REQUIRE(two_c3.status == CertStatus::Gdl);
  CHECK(verify_gdl(*two_c3.labeling).is_gdl);

  const Certificate two_c2 = certify_nonexistence(CircuitFamily({2, 2}));
  REQUIRE(two_c2.status == CertStatus::Gdl);  // counterexample returned
  CHECK(verify_gdl(*two_c2.labeling).is_gdl);
}

TEST_CASE("canonical mode returns the lexicographically smallest gdl") {
  SearchBudget budget;
  budget.canonical = true;
  const Certificate cert = search_gdl(CircuitFamily({3, 3}), budget);
  REQUIRE(cert.status == CertStatus::Gdl);
  const auto all = oracle::all_gdls(CircuitFamily({3, 3}));
  REQUIRE_FALSE(all.empty());
  CHECK(cert.labeling->labels == *std::min_element(all.begin(), all.end()));

  const Certificate again = search_gdl(CircuitFamily({3, 3}), budget);
  CHECK(again.labeling->labels == cert.labeling->labels);
}

TEST_CASE("symmetry reduction is sound on every family up to 8 vertices") {
  for (const auto& lengths : oracle::all_families_up_to(8)) {
    CircuitFamily fam(lengths);
    SearchOptions with_sym;
    SearchOptions without_sym;
    without_sym.use_symmetry = false;
    const bool sym_found = exhaustive(lengths, with_sym).status == CertStatus::Gdl;
    const bool raw_found =
        exhaustive(lengths, without_sym).status == CertStatus::Gdl;
    const bool oracle_found = oracle::exists_gdl(fam);
    CAPTURE(lengths);
    CHECK(sym_found == oracle_found);
    CHECK(raw_found == oracle_found);
  }
}

TEST_CASE("parallel search agrees with the serial reference") {
  for (const std::vector<int>& lengths :
       {std::vector<int>{3, 3, 3}, std::vector<int>{2, 3, 4},
        std::vector<int>{4, 5}, std::vector<int>{2, 2, 2, 3},
        std::vector<int>{2, 3}}) {
    SearchOptions par;
    par.parallel = true;
    const Certificate serial = exhaustive(lengths);
    const Certificate parallel = exhaustive(lengths, par);
    CAPTURE(lengths);
    CHECK(serial.status == parallel.status);

    SearchBudget canonical;
    canonical.canonical = true;
    SearchOptions par_unbounded = par;
    par_unbounded.allow_unbounded = true;
    const Certificate cs =
        search_gdl(CircuitFamily(lengths), canonical, {},
                   SearchOptions{.use_symmetry = true, .parallel = false,
                                 .threads = 0, .allow_unbounded = true});
    const Certificate cp =
        search_gdl(CircuitFamily(lengths), canonical, {}, par_unbounded);
    CHECK(cs.status == cp.status);
    if (cs.status == CertStatus::Gdl)
      CHECK(cs.labeling->labels == cp.labeling->labels);
  }
}

TEST_CASE("exhaustion node counts are schedule-independent") {
  SearchOptions par;
  par.parallel = true;
  const Certificate a = exhaustive({2, 3}, par);
  const Certificate b = exhaustive({2, 3}, par);
  REQUIRE(a.status == CertStatus::NoGdlExhaustive);
  REQUIRE(b.status == CertStatus::NoGdlExhaustive);
  CHECK(a.search->nodes == b.search->nodes);  // full space either way
}

TEST_CASE("magnitude profile constrains the search") {
  SearchBudget budget;
  budget.canonical = true;
  const Certificate ok = search_gdl(CircuitFamily({3, 3, 3}), budget,
                                    MagnitudeProfile{7, 1});
  REQUIRE(ok.status == CertStatus::Gdl);
  const auto rep = verify_gdl(*ok.labeling);
  CHECK(rep.is_gdl);
  CHECK(rep.max_magnitude <= 7);
  if (rep.magnitude_counts.count(7)) CHECK(rep.magnitude_counts.at(7) <= 1);

  // 2C2 needs two distinct magnitudes, so capping at 1 is infeasible.
  const Certificate none =
      search_gdl(CircuitFamily({2, 2}), budget, MagnitudeProfile{1, 2});
  CHECK(none.status == CertStatus::NoGdlExhaustive);
}

TEST_CASE("profiled searches agree between serial and parallel drivers") {
  SearchBudget canonical;
  canonical.canonical = true;
  SearchOptions serial;
  serial.allow_unbounded = true;
  SearchOptions parallel;
  parallel.parallel = true;
  parallel.allow_unbounded = true;

  // 2C2 magnitudes come in +-pairs; one arc at magnitude 3 is impossible,
  // so only {+-1, +-2} remain and the label split forces a clash of 3s.
  const MagnitudeProfile tight{3, 1};
  const Certificate s2 =
      search_gdl(CircuitFamily({2, 2}), canonical, tight, serial);
  const Certificate p2 =
      search_gdl(CircuitFamily({2, 2}), canonical, tight, parallel);
  CHECK(s2.status == CertStatus::NoGdlExhaustive);
  CHECK(p2.status == CertStatus::NoGdlExhaustive);

  for (int n : {3, 4, 5, 6}) {
    CAPTURE(n);
    const MagnitudeProfile prof{3 * n - 2, 1};
    CircuitFamily fam(std::vector<int>(n, 3));
    const Certificate s = search_gdl(fam, canonical, prof, serial);
    const Certificate p = search_gdl(fam, canonical, prof, parallel);
    REQUIRE(s.status == CertStatus::Gdl);
    REQUIRE(p.status == CertStatus::Gdl);
    CHECK(s.labeling->labels == p.labeling->labels);
    const auto rep = verify_gdl(*p.labeling);
    CHECK(rep.max_magnitude <= prof.max_magnitude);
    if (rep.magnitude_counts.count(prof.max_magnitude))
      CHECK(rep.magnitude_counts.at(prof.max_magnitude) <= 1);
  }
}

TEST_CASE("budgets produce timeouts") {
  SearchBudget tiny;
  tiny.max_nodes = 10;
  const Certificate cert =
      search_gdl(CircuitFamily({3, 3, 3, 3, 3}), tiny);
  CHECK(cert.status == CertStatus::Timeout);
  CHECK(cert.budget_nodes == 10);
}

TEST_CASE("unbounded searches beyond 12 vertices require an override") {
  SearchBudget unlimited;
  CHECK_THROWS_AS(search_gdl(CircuitFamily({3, 3, 3, 3, 3}), unlimited),
                  std::invalid_argument);
  CHECK_THROWS_AS(certify_nonexistence(CircuitFamily({3, 3, 3, 3, 3})),
                  std::invalid_argument);
  CHECK(certify_nonexistence(CircuitFamily({3, 3, 3, 3, 3}), true).status ==
        CertStatus::Gdl);
}

TEST_CASE("empty family is trivially labeled") {
  const Certificate cert = exhaustive({});
  CHECK(cert.status == CertStatus::Gdl);
  CHECK(cert.labeling->labels.empty());
}

TEST_CASE("catalog entries satisfy their profiles and persist bit-exactly") {
  const auto dir = std::filesystem::temp_directory_path() / "gdl_catalog_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "catalog.json").string();

  const auto entries = generate_catalog(path);
  REQUIRE(entries.size() == 15);
  for (const auto& e : entries) {
    CAPTURE(e.family);
    CHECK(catalog_entry_valid(e));
    CHECK(e.generator == kCatalogGeneratorVersion);
  }
  // 8 bounded-magnitude triangle entries + 7 plain C4 entries
  int lemma7 = 0;
  for (const auto& e : entries) lemma7 += e.profile == "lemma7";
  CHECK(lemma7 == 8);

  const std::string first = slurp(path);
  auto loaded = load_catalog(path);
  REQUIRE(loaded.has_value());
  save_catalog(path, *loaded);
  CHECK(slurp(path) == first);  // round-trips bit-exactly

  const auto regenerated = generate_catalog_entries();
  REQUIRE(regenerated.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(regenerated[i].family == entries[i].family);
    CHECK(regenerated[i].labels == entries[i].labels);  // deterministic
  }

  std::filesystem::remove_all(dir);
}

TEST_CASE("individually tampered catalog entries are regenerated") {
  const auto dir = std::filesystem::temp_directory_path() / "gdl_catalog_mix";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "catalog.json").string();
  auto entries = generate_catalog_entries();
  std::swap(entries[0].labels[0], entries[0].labels[1]);  // break 2*C3
  REQUIRE_FALSE(catalog_entry_valid(entries[0]));
  save_catalog(path, entries);

  Catalog::instance().set_path(path);
  const Labeling two = Catalog::instance().n_c3(2);  // regenerated
  const auto rep = verify_gdl(two);
  CHECK(rep.is_gdl);
  CHECK(rep.max_magnitude <= 4);
  CHECK(verify_gdl(Catalog::instance().n_c3(3)).is_gdl);  // loaded as-is
  Catalog::instance().set_path("");
  std::filesystem::remove_all(dir);
}

TEST_CASE("corrupt or missing catalog files fall back to regeneration") {
  const auto dir = std::filesystem::temp_directory_path() / "gdl_catalog_bad";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "catalog.json").string();
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_FALSE(load_catalog(path).has_value());
  CHECK_FALSE(load_catalog((dir / "absent.json").string()).has_value());

  Catalog::instance().set_path(path);  // corrupt file: lookups regenerate
  const Labeling two = Catalog::instance().n_c3(2);
  const auto rep = verify_gdl(two);
  CHECK(rep.is_gdl);
  CHECK(rep.max_magnitude <= 4);
  CHECK_THROWS_AS(Catalog::instance().n_c3(10), std::out_of_range);
  CHECK_THROWS_AS(Catalog::instance().c4_plus_n_c3(1), std::out_of_range);
  Catalog::instance().set_path("");
  std::filesystem::remove_all(dir);
}
