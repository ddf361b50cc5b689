#include "maghom/render.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace maghom {

namespace fs = std::filesystem;

namespace {

// One cell of a triangle table as text. Blank means zero; "?" means the
// rank was not computed; "+?" flags missing torsion when the table carries
// torsion elsewhere.
std::string cell_text(const CellGroup& c, bool table_has_torsion) {
  if (!c.rank) return "?";
  if (table_has_torsion && !c.torsion)
    return group_text(*c.rank, {}) + " +?";
  if (*c.rank == 0 && (!c.torsion || c.torsion->empty())) return "";
  return group_text(*c.rank, c.torsion ? *c.torsion : std::vector<Int>{});
}

bool any_torsion(const BigradedGroup& h) {
  for (int l = 0; l <= h.lmax(); ++l)
    for (int k = 0; k <= l; ++k)
      if (h.cell(k, l).torsion) return true;
  return false;
}

// cells[l][k], k <= l. Missing trailing columns are treated as blank.
std::string layout_triangle(const std::vector<std::vector<std::string>>& cells) {
  int lmax = static_cast<int>(cells.size()) - 1;
  if (lmax < 0) return "";
  std::vector<std::size_t> width(lmax + 2);
  width[0] = 3;  // "l\\k"
  for (int l = 0; l <= lmax; ++l)
    width[0] = std::max(width[0], std::to_string(l).size());
  for (int k = 0; k <= lmax; ++k) {
    width[k + 1] = std::to_string(k).size();
    for (int l = k; l <= lmax; ++l)
      if (k < static_cast<int>(cells[l].size()))
        width[k + 1] = std::max(width[k + 1], cells[l][k].size());
  }
  std::ostringstream os;
  auto put = [&](const std::string& s, std::size_t w) {
    os << std::string(w - s.size(), ' ') << s;
  };
  put("l\\k", width[0]);
  for (int k = 0; k <= lmax; ++k) {
    os << "  ";
    put(std::to_string(k), width[k + 1]);
  }
  os << '\n';
  for (int l = 0; l <= lmax; ++l) {
    put(std::to_string(l), width[0]);
    std::string row;
    for (int k = 0; k <= lmax; ++k) {
      row += "  ";
      std::string s =
          k < static_cast<int>(cells[l].size()) ? cells[l][k] : "";
      row += std::string(width[k + 1] - s.size(), ' ') + s;
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    os << row << '\n';
  }
  return os.str();
}

std::string layout_csv(const std::vector<std::vector<std::string>>& cells) {
  int lmax = static_cast<int>(cells.size()) - 1;
  std::ostringstream os;
  os << "l\\k";
  for (int k = 0; k <= lmax; ++k) os << ',' << k;
  os << '\n';
  for (int l = 0; l <= lmax; ++l) {
    os << l;
    for (int k = 0; k <= lmax; ++k) {
      os << ',';
      if (k < static_cast<int>(cells[l].size())) os << cells[l][k];
    }
    os << '\n';
  }
  return os.str();
}

std::vector<std::vector<std::string>> homology_cells_text(
    const BigradedGroup& h) {
  bool torsion = any_torsion(h);
  std::vector<std::vector<std::string>> cells;
  for (int l = 0; l <= h.lmax(); ++l) {
    cells.emplace_back();
    for (int k = 0; k <= l; ++k)
      cells.back().push_back(cell_text(h.cell(k, l), torsion));
  }
  return cells;
}

std::vector<std::vector<std::string>> chain_cells_text(
    const std::vector<std::vector<Int>>& counts) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : counts) {
    cells.emplace_back();
    for (const Int& v : row)
      cells.back().push_back(v == 0 ? std::string() : v.str());
  }
  return cells;
}

Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a decimal string");
}

}  // namespace

std::string homology_table_text(const BigradedGroup& h) {
  return layout_triangle(homology_cells_text(h));
}

std::string chain_table_text(const std::vector<std::vector<Int>>& counts) {
  return layout_triangle(chain_cells_text(counts));
}

std::string homology_table_csv(const BigradedGroup& h) {
  return layout_csv(homology_cells_text(h));
}

std::string chain_table_csv(const std::vector<std::vector<Int>>& counts) {
  return layout_csv(chain_cells_text(counts));
}

nlohmann::json int_json(const Int& v) {
  static const Int lim = Int(1) << 53;
  if (v > -lim && v < lim) return v.convert_to<std::int64_t>();
  return v.str();
}

nlohmann::json graph_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

nlohmann::json homology_cells_json(const BigradedGroup& h) {
  nlohmann::json cells = nlohmann::json::array();
  for (int l = 0; l <= h.lmax(); ++l)
    for (int k = 0; k <= l; ++k) {
      const CellGroup& c = h.cell(k, l);
      nlohmann::json cell = {{"k", k}, {"l", l}, {"method", c.method}};
      cell["rank"] = c.rank ? nlohmann::json(*c.rank) : nullptr;
      if (c.torsion) {
        nlohmann::json t = nlohmann::json::array();
        for (const Int& d : *c.torsion) t.push_back(int_json(d));
        cell["torsion"] = t;
      } else {
        cell["torsion"] = nullptr;
      }
      cells.push_back(std::move(cell));
    }
  return cells;
}

nlohmann::json chain_counts_json(const std::vector<std::vector<Int>>& counts) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : counts) {
    nlohmann::json r = nlohmann::json::array();
    for (const Int& v : row) r.push_back(int_json(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json series_json(const PowerSeries& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const Int& c : s.coeffs) out.push_back(int_json(c));
  return out;
}

nlohmann::json report_json(const CheckReport& rep) {
  nlohmann::json failures = nlohmann::json::array();
  for (const CellComparison& c : rep.cells)
    if (!c.equal)
      failures.push_back(
          {{"k", c.k}, {"l", c.l}, {"lhs", c.lhs}, {"rhs", c.rhs}});
  return {{"schema", "maghom/1"},
          {"kind", "check"},
          {"check", rep.check},
          {"graphs", rep.graphs},
          {"lmax", rep.lmax},
          {"verdict", to_string(rep.verdict)},
          {"ranks_only", rep.ranks_only},
          {"hypothesis", rep.hypothesis},
          {"note", rep.note},
          {"cells_compared", rep.cells.size()},
          {"cells_failed", rep.failed_cells()},
          {"failures", failures},
          {"seconds", rep.seconds}};
}

nlohmann::json homology_document(const Graph& g, const BigradedGroup& h) {
  return {{"schema", "maghom/1"},
          {"kind", "homology"},
          {"graph", graph_json(g)},
          {"lmax", h.lmax()},
          {"cells", homology_cells_json(h)}};
}

nlohmann::json chains_document(const Graph& g,
                               const std::vector<std::vector<Int>>& counts) {
  return {{"schema", "maghom/1"},
          {"kind", "chains"},
          {"graph", graph_json(g)},
          {"lmax", static_cast<int>(counts.size()) - 1},
          {"counts", chain_counts_json(counts)}};
}

std::string report_text(const CheckReport& rep, bool verbose) {
  std::ostringstream os;
  os << rep.check << ": " << to_string(rep.verdict);
  if (rep.ranks_only && rep.verdict != CheckReport::Verdict::inapplicable)
    os << " (ranks only)";
  os << '\n';
  os << "  graphs: ";
  for (std::size_t i = 0; i < rep.graphs.size(); ++i)
    os << (i ? ", " : "") << rep.graphs[i];
  os << '\n';
  os << "  lmax: " << rep.lmax << '\n';
  if (rep.verdict == CheckReport::Verdict::inapplicable) {
    os << "  unmet hypothesis: " << rep.hypothesis << '\n';
    if (!rep.note.empty()) os << "  detail: " << rep.note << '\n';
    return os.str();
  }
  os << "  compared: " << rep.cells.size() << " quantities, "
     << rep.failed_cells() << " failed";
  {
    std::ostringstream secs;
    secs.setf(std::ios::fixed);
    secs.precision(2);
    secs << rep.seconds;
    os << "  [" << secs.str() << "s]\n";
  }
  if (!rep.note.empty()) os << "  note: " << rep.note << '\n';
  for (const CellComparison& c : rep.cells) {
    if (c.equal && !verbose) continue;
    os << "  [" << (c.equal ? " ok " : "FAIL") << "] ";
    if (c.k < 0)
      os << "q^" << c.l << " coefficient";
    else
      os << "MH_{" << c.k << "," << c.l << "}";
    os << ": lhs = " << c.lhs << ", rhs = " << c.rhs << '\n';
  }
  return os.str();
}

namespace {

constexpr const char* kCacheVersion = "maghom 0.1.0";

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 0xf];
  return s;
}

fs::path cache_path(const std::string& dir, const Graph& g, bool torsion,
                    bool exact) {
  return fs::path(dir) / ("mh-" + hash_hex(g.structural_hash()) +
                          (torsion ? "-t" : "-r") +
                          (exact ? "-exact" : "-modular") + ".json");
}

// A table counts as exact when no cell rank relied on modular arithmetic.
bool table_is_exact(const BigradedGroup& h) {
  for (int l = 0; l <= h.lmax(); ++l)
    for (int k = 0; k <= l; ++k)
      if (h.cell(k, l).method == "modular") return false;
  return true;
}

std::optional<BigradedGroup> parse_cached_table(const nlohmann::json& doc,
                                                const Graph& g) {
  if (!doc.is_object() || doc.value("schema", "") != "maghom/1" ||
      doc.value("kind", "") != "homology-cache")
    return std::nullopt;
  if (doc["graph"] != graph_json(g)) return std::nullopt;
  int lmax = doc.value("lmax", -1);
  if (lmax < 0) return std::nullopt;
  BigradedGroup h(lmax);
  for (const nlohmann::json& cell : doc.at("cells")) {
    int k = cell.at("k").get<int>(), l = cell.at("l").get<int>();
    if (k < 0 || l < k || l > lmax) return std::nullopt;
    CellGroup& c = h.cell_mut(k, l);
    c.method = cell.value("method", "");
    if (!cell.at("rank").is_null()) c.rank = cell.at("rank").get<long>();
    if (!cell.at("torsion").is_null()) {
      std::vector<Int> t;
      for (const nlohmann::json& d : cell.at("torsion"))
        t.push_back(int_from_json(d));
      c.torsion = std::move(t);
    }
  }
  return h;
}

// RAII advisory lock on a sidecar file; never blocks rename atomicity.
class FileLock {
 public:
  explicit FileLock(const fs::path& p) {
    fd_ = ::open(p.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

std::optional<ResultCache> ResultCache::from_environment() {
  if (const char* dir = std::getenv("MAGHOM_CACHE_DIR"); dir && *dir)
    return ResultCache(dir);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return ResultCache((fs::path(xdg) / "maghom").string());
  if (const char* home = std::getenv("HOME"); home && *home)
    return ResultCache((fs::path(home) / ".cache" / "maghom").string());
  return std::nullopt;
}

std::optional<BigradedGroup> ResultCache::load(
    const Graph& g, const HomologyOptions& opt) const {
  bool need_exact = opt.method == RankMethod::exact;
  for (bool exact : {true, false}) {
    if (need_exact && !exact) continue;
    for (bool torsion : {true, false}) {
      if (opt.torsion && !torsion) continue;
      fs::path p = cache_path(dir_, g, torsion, exact);
      std::ifstream in(p);
      if (!in) continue;
      nlohmann::json doc;
      try {
        in >> doc;
        auto h = parse_cached_table(doc, g);
        if (!h || h->lmax() < opt.lmax) continue;
        BigradedGroup cut = h->truncated(opt.lmax);
        if (!cut.ranks_complete()) continue;
        if (opt.torsion && cut.has_torsion_gaps()) continue;
        return cut;
      } catch (const nlohmann::json::exception&) {
        continue;  // unreadable entries are treated as absent
      } catch (const std::invalid_argument&) {
        continue;
      }
    }
  }
  return std::nullopt;
}

void ResultCache::store(const Graph& g, const HomologyOptions& opt,
                        const BigradedGroup& h) const {
  if (h.lmax() < 0 || !h.ranks_complete()) return;  // never cache partials
  bool exact = table_is_exact(h);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;
  fs::path p = cache_path(dir_, g, opt.torsion, exact);
  FileLock lock(p.string() + ".lock");
  {
    std::ifstream in(p);
    if (in) {
      try {
        nlohmann::json existing;
        in >> existing;
        auto old = parse_cached_table(existing, g);
        if (old && old->lmax() >= h.lmax()) return;  // existing is richer
      } catch (const nlohmann::json::exception&) {
        // fall through and replace the unreadable file
      }
    }
  }
  nlohmann::json doc = {{"schema", "maghom/1"},
                        {"kind", "homology-cache"},
                        {"version", kCacheVersion},
                        {"graph", graph_json(g)},
                        {"lmax", h.lmax()},
                        {"torsion", opt.torsion},
                        {"rank_method", exact ? "exact" : "modular"},
                        {"cells", homology_cells_json(h)}};
  fs::path tmp = p.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << doc.dump();
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, p, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace maghom
