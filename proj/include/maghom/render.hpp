#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maghom/homology.hpp"
#include "maghom/verify.hpp"

namespace maghom {

// Triangle tables in the usual layout: one row per level l (increasing down
// the page), one column per degree k, zero cells left blank, everything
// right-aligned. Homology cells print the group ("12", "12 + Z/2"); "?"
// marks a rank that was not computed and a trailing "+?" marks missing
// torsion on a computed rank.
std::string homology_table_text(const BigradedGroup& h);
std::string chain_table_text(const std::vector<std::vector<Int>>& counts);

// Same tables as CSV: header "l\k,0,1,...", blank zero cells.
std::string homology_table_csv(const BigradedGroup& h);
std::string chain_table_csv(const std::vector<std::vector<Int>>& counts);

// JSON building blocks (schema "maghom/1"). Integers become JSON numbers
// when |v| < 2^53 and decimal strings otherwise, so nothing is silently
// rounded by downstream double parsers.
nlohmann::json int_json(const Int& v);
nlohmann::json graph_json(const Graph& g);
nlohmann::json homology_cells_json(const BigradedGroup& h);
nlohmann::json chain_counts_json(const std::vector<std::vector<Int>>& counts);
nlohmann::json series_json(const PowerSeries& s);
nlohmann::json report_json(const CheckReport& rep);

// Whole documents as emitted by the CLI.
nlohmann::json homology_document(const Graph& g, const BigradedGroup& h);
nlohmann::json chains_document(const Graph& g,
                               const std::vector<std::vector<Int>>& counts);

// Human-readable check report. Failed comparisons are always listed;
// verbose lists the passing ones too.
std::string report_text(const CheckReport& rep, bool verbose = false);

// Cross-run file cache of homology tables, keyed by the structural graph
// hash plus the torsion flag and rank-method class. A stored table serves a
// request when its lmax is at least the requested one, its ranks are
// complete, its torsion has no gaps if torsion was requested, and its
// method is at least as strong (exact supersedes modular). Stores are
// atomic (temp file + rename) under an advisory flock; the worst outcome of
// concurrent runs is redone work, never a torn file.
class ResultCache {
 public:
  explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}

  // $MAGHOM_CACHE_DIR, else $XDG_CACHE_HOME/maghom, else
  // $HOME/.cache/maghom; nullopt when no candidate exists.
  static std::optional<ResultCache> from_environment();

  std::optional<BigradedGroup> load(const Graph& g,
                                    const HomologyOptions& opt) const;
  void store(const Graph& g, const HomologyOptions& opt,
             const BigradedGroup& h) const;

  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
};

}  // namespace maghom
