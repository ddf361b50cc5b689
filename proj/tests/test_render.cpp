#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "doctest.h"
#include "maghom/dsl.hpp"
#include "maghom/render.hpp"

using namespace maghom;
namespace fs = std::filesystem;

namespace {

HomologyOptions opts(int lmax, bool torsion = false,
                     RankMethod m = RankMethod::automatic) {
  HomologyOptions o;
  o.lmax = lmax;
  o.torsion = torsion;
  o.method = m;
  return o;
}

bool same_table(const BigradedGroup& a, const BigradedGroup& b) {
  if (a.lmax() != b.lmax()) return false;
  for (int l = 0; l <= a.lmax(); ++l)
    for (int k = 0; k <= l; ++k) {
      if (a.cell(k, l).rank != b.cell(k, l).rank) return false;
      if (a.cell(k, l).torsion != b.cell(k, l).torsion) return false;
    }
  return true;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("maghom-render-test-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// A small synthetic table exercising every cell marker at once.
BigradedGroup marker_table() {
  BigradedGroup h(2);
  h.cell_mut(0, 0) = {3, std::vector<Int>{2}, "exact"};
  h.cell_mut(0, 1) = {0, std::vector<Int>{}, "zero"};
  h.cell_mut(1, 1) = {std::nullopt, std::nullopt, "skipped(trail budget)"};
  h.cell_mut(0, 2) = {0, std::vector<Int>{}, "zero"};
  h.cell_mut(1, 2) = {0, std::vector<Int>{2}, "exact"};
  h.cell_mut(2, 2) = {4, std::nullopt, "modular"};
  return h;
}

}  // namespace

TEST_CASE("homology table as CSV") {
  Graph c5 = parse_graph("C(5)");
  BigradedGroup h = compute_homology(c5, opts(4, false, RankMethod::exact));
  CHECK(homology_table_csv(h) ==
        "l\\k,0,1,2,3,4\n"
        "0,5,,,,\n"
        "1,,10,,,\n"
        "2,,,10,,\n"
        "3,,,10,10,\n"
        "4,,,,30,10\n");
}

TEST_CASE("chain table as CSV") {
  Graph c5 = parse_graph("C(5)");
  DistMatrix d(c5);
  CHECK(chain_table_csv(chain_count_table(c5, d, 3)) ==
        "l\\k,0,1,2,3\n"
        "0,5,,,\n"
        "1,,10,,\n"
        "2,,10,20,\n"
        "3,,,40,40\n");
}

TEST_CASE("cell markers for torsion, gaps and skipped ranks") {
  BigradedGroup h = marker_table();
  CHECK(homology_table_csv(h) ==
        "l\\k,0,1,2\n"
        "0,3 + Z/2,,\n"
        "1,,?,\n"
        "2,,0 + Z/2,4 +?\n");

  std::string text = homology_table_text(h);
  CHECK(text.substr(0, 3) == "l\\k");
  CHECK(text.find("3 + Z/2") != std::string::npos);
  CHECK(text.find("?") != std::string::npos);
  CHECK(text.find("4 +?") != std::string::npos);
  // Rows end after their last nonblank cell.
  CHECK(text.find(" \n") == std::string::npos);
}

TEST_CASE("plain text table holds the values in triangle form") {
  Graph c5 = parse_graph("C(5)");
  BigradedGroup h = compute_homology(c5, opts(3));
  std::string text = homology_table_text(h);
  std::vector<std::vector<std::string>> tokens;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    std::istringstream words(line);
    tokens.emplace_back();
    for (std::string w; words >> w;) tokens.back().push_back(w);
  }
  REQUIRE(tokens.size() == 5);
  CHECK(tokens[0] ==
        std::vector<std::string>{"l\\k", "0", "1", "2", "3"});
  CHECK(tokens[1] == std::vector<std::string>{"0", "5"});
  CHECK(tokens[2] == std::vector<std::string>{"1", "10"});
  CHECK(tokens[3] == std::vector<std::string>{"2", "10"});
  CHECK(tokens[4] == std::vector<std::string>{"3", "10", "10"});
}

TEST_CASE("json integers stay exact across the double boundary") {
  Int edge = Int(1) << 53;
  CHECK(int_json(edge - 1).is_number_integer());
  CHECK(int_json(edge - 1).get<std::int64_t>() == 9007199254740991LL);
  CHECK(int_json(edge).is_string());
  CHECK(int_json(edge).get<std::string>() == "9007199254740992");
  CHECK(int_json(-(edge - 1)).is_number_integer());
  CHECK(int_json(-edge).get<std::string>() == "-9007199254740992");
  CHECK(int_json(Int(0)) == 0);
}

TEST_CASE("homology document layout") {
  Graph c5 = parse_graph("C(5)");
  BigradedGroup h = compute_homology(c5, opts(3));
  nlohmann::json doc = homology_document(c5, h);
  CHECK(doc["schema"] == "maghom/1");
  CHECK(doc["kind"] == "homology");
  CHECK(doc["graph"]["n"] == 5);
  CHECK(doc["graph"]["edges"].size() == 5);
  CHECK(doc["lmax"] == 3);
  bool found = false;
  for (const auto& cell : doc["cells"])
    if (cell["k"] == 2 && cell["l"] == 3) {
      found = true;
      CHECK(cell["rank"] == 10);
      CHECK(cell["torsion"].is_null());
      CHECK(cell["method"].is_string());
    }
  CHECK(found);
  CHECK(doc["cells"].size() == 4 + 3 + 2 + 1);
}

TEST_CASE("chains document and series arrays") {
  Graph c5 = parse_graph("C(5)");
  DistMatrix d(c5);
  nlohmann::json doc = chains_document(c5, chain_count_table(c5, d, 3));
  CHECK(doc["kind"] == "chains");
  CHECK(doc["lmax"] == 3);
  CHECK(doc["counts"][3] == nlohmann::json::array({0, 0, 40, 40}));

  CHECK(series_json(magnitude_by_counting(c5, 2)) ==
        nlohmann::json::array({5, -10, 10}));
}

TEST_CASE("check report as json") {
  CheckReport rep = check_diagonal(parse_graph("C(5)"), 4);
  nlohmann::json doc = report_json(rep);
  CHECK(doc["kind"] == "check");
  CHECK(doc["check"] == "diagonal");
  CHECK(doc["verdict"] == "fail");
  CHECK(doc["cells_failed"] == 4);
  CHECK(doc["failures"].size() == 4);
  CHECK(doc["failures"][0]["k"] == 2);
  CHECK(doc["failures"][0]["l"] == 3);
  CHECK(doc["failures"][0]["lhs"] == "0");
  CHECK(doc["failures"][0]["rhs"] == "10");
  CHECK(doc["cells_compared"].get<long>() > 4);
  CHECK(doc["seconds"].is_number());

  Graph x = parse_graph("[0-1,1-2,2-3,3-4,4-5,5-6,6-7,0-7,0-4]");
  nlohmann::json inap =
      report_json(check_mayer_vietoris(x, {0, 1, 2, 3, 4}, {0, 4, 5, 6, 7}, 3));
  CHECK(inap["verdict"] == "inapplicable");
  CHECK(inap["hypothesis"] == "H projects onto G ∩ H");
  CHECK(inap["failures"].empty());
}

TEST_CASE("check report as text") {
  CheckReport fail = check_diagonal(parse_graph("C(5)"), 4);
  std::string text = report_text(fail);
  CHECK(text.find("diagonal: fail") == 0);
  CHECK(text.find("compared: ") != std::string::npos);
  CHECK(text.find("[FAIL] MH_{2,3}: lhs = 0, rhs = 10") != std::string::npos);
  CHECK(text.find("[FAIL] q^3 coefficient") != std::string::npos);
  CHECK(text.find("[ ok ]") == std::string::npos);
  CHECK(report_text(fail, true).find("[ ok ]") != std::string::npos);

  Graph x = parse_graph("[0-1,1-2,2-3,3-4,4-5,5-6,6-7,0-7,0-4]");
  std::string inap = report_text(
      check_mayer_vietoris(x, {0, 1, 2, 3, 4}, {0, 4, 5, 6, 7}, 3));
  CHECK(inap.find("unmet hypothesis: H projects onto G ∩ H") !=
        std::string::npos);
  CHECK(inap.find("detail: ") != std::string::npos);

  HomologyOptions base;
  base.torsion = true;
  base.torsion_limit = 1;
  std::string ranks_only =
      report_text(check_diagonal(parse_graph("C(4)"), 3, base));
  CHECK(ranks_only.find("(ranks only)") != std::string::npos);
}

TEST_CASE("result cache round trips and downgrades") {
  TempDir tmp;
  ResultCache cache(tmp.path.string());
  Graph c5 = parse_graph("C(5)");
  HomologyOptions full = opts(5, true);
  BigradedGroup h = compute_homology(c5, full);

  CHECK(!cache.load(c5, full).has_value());
  cache.store(c5, full, h);

  auto back = cache.load(c5, full);
  REQUIRE(back.has_value());
  CHECK(same_table(*back, h));

  // A stored deeper table serves shallower requests, with or without
  // torsion, but never a deeper one.
  auto cut = cache.load(c5, opts(3, true));
  REQUIRE(cut.has_value());
  CHECK(cut->lmax() == 3);
  CHECK(same_table(*cut, h.truncated(3)));
  CHECK(cache.load(c5, opts(4, false)).has_value());
  CHECK(!cache.load(c5, opts(6, true)).has_value());

  // A different graph misses.
  CHECK(!cache.load(parse_graph("C(6)"), opts(3)).has_value());
}

TEST_CASE("result cache respects method and torsion classes") {
  TempDir tmp;
  ResultCache cache(tmp.path.string());
  Graph c5 = parse_graph("C(5)");

  // A rank table whose cells say they were computed modularly. Built by hand
  // because a modular *request* may legitimately be answered with exact
  // ranks (the process memo upgrades), which would land in the other class.
  BigradedGroup mod_table(4);
  for (int l = 0; l <= 4; ++l)
    for (int k = 0; k <= l; ++k) {
      CellGroup& c = mod_table.cell_mut(k, l);
      c.rank = k == l ? 10 : 0;
      c.method = k == l ? "modular" : "zero";
    }
  mod_table.cell_mut(0, 0).rank = 5;
  HomologyOptions modular = opts(4, false, RankMethod::modular);
  cache.store(c5, modular, mod_table);

  // A modular table must not serve a request that demands exact ranks.
  CHECK(cache.load(c5, opts(4)).has_value());
  CHECK(cache.load(c5, modular).has_value());
  CHECK(!cache.load(c5, opts(4, false, RankMethod::exact)).has_value());

  // A rank-only store must not serve a torsion request.
  CHECK(!cache.load(c5, opts(4, true)).has_value());

  HomologyOptions exact = opts(4, false, RankMethod::exact);
  cache.store(c5, exact, compute_homology(c5, exact));
  CHECK(cache.load(c5, exact).has_value());
}

TEST_CASE("result cache survives junk and keeps the richer file") {
  TempDir tmp;
  ResultCache cache(tmp.path.string());
  Graph c5 = parse_graph("C(5)");

  cache.store(c5, opts(5), compute_homology(c5, opts(5)));
  // Restoring a shallower table must not clobber the deeper one.
  cache.store(c5, opts(3), compute_homology(c5, opts(3)));
  CHECK(cache.load(c5, opts(5)).has_value());

  // Corrupt every entry; loads must miss instead of throwing.
  for (const auto& entry : fs::directory_iterator(tmp.path))
    if (entry.path().extension() == ".json") {
      std::ofstream out(entry.path());
      out << "not json at all";
    }
  CHECK(!cache.load(c5, opts(3)).has_value());

  // A store over the junk replaces it.
  cache.store(c5, opts(3), compute_homology(c5, opts(3)));
  CHECK(cache.load(c5, opts(3)).has_value());
}

TEST_CASE("cache directory resolution from the environment") {
  const char* old_dir = std::getenv("MAGHOM_CACHE_DIR");
  const char* old_xdg = std::getenv("XDG_CACHE_HOME");
  const char* old_home = std::getenv("HOME");
  std::string saved_dir = old_dir ? old_dir : "";
  std::string saved_xdg = old_xdg ? old_xdg : "";
  std::string saved_home = old_home ? old_home : "";

  ::setenv("MAGHOM_CACHE_DIR", "/tmp/maghom-explicit", 1);
  auto a = ResultCache::from_environment();
  REQUIRE(a.has_value());
  CHECK(a->dir() == "/tmp/maghom-explicit");

  ::unsetenv("MAGHOM_CACHE_DIR");
  ::setenv("XDG_CACHE_HOME", "/tmp/xdg", 1);
  auto b = ResultCache::from_environment();
  REQUIRE(b.has_value());
  CHECK(b->dir() == "/tmp/xdg/maghom");

  ::unsetenv("XDG_CACHE_HOME");
  ::setenv("HOME", "/tmp/home", 1);
  auto c = ResultCache::from_environment();
  REQUIRE(c.has_value());
  CHECK(c->dir() == "/tmp/home/.cache/maghom");

  ::unsetenv("HOME");
  CHECK(!ResultCache::from_environment().has_value());

  if (!saved_dir.empty()) ::setenv("MAGHOM_CACHE_DIR", saved_dir.c_str(), 1);
  if (!saved_xdg.empty()) ::setenv("XDG_CACHE_HOME", saved_xdg.c_str(), 1);
  if (!saved_home.empty()) ::setenv("HOME", saved_home.c_str(), 1);
}
