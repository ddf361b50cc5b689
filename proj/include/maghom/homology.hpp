#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maghom/graph.hpp"
#include "maghom/magchain.hpp"

namespace maghom {

enum class RankMethod { automatic, exact, modular };

std::string to_string(RankMethod m);

struct HomologyOptions {
  int lmax = 6;
  bool torsion = false;
  RankMethod method = RankMethod::automatic;
  // Hard ceiling on the number of materialized trails across all levels.
  long max_trails = 10'000'000;
  // Smith form guard on min(rows, cols); values above 5000 are opt-in and
  // 20000 is the hard cap.
  long torsion_limit = 5000;
  int jobs = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 0x6d6167686f6dull;
};

// One bigraded piece MH_{k,l}. Absent rank/torsion means "not computed"
// (resource guard), never "zero".
struct CellGroup {
  std::optional<long> rank;
  std::optional<std::vector<Int>> torsion;
  std::string method;  // "exact", "modular", "zero", or "skipped(...)"

  bool known_zero() const {
    return rank && *rank == 0 && (!torsion || torsion->empty());
  }
};

class BigradedGroup {
 public:
  BigradedGroup() = default;
  explicit BigradedGroup(int lmax) : lmax_(lmax), cells_(lmax + 1) {
    for (int l = 0; l <= lmax; ++l) cells_[l].resize(l + 1);
  }

  int lmax() const { return lmax_; }
  const CellGroup& cell(int k, int l) const { return cells_.at(l).at(k); }
  CellGroup& cell_mut(int k, int l) { return cells_.at(l).at(k); }

  bool ranks_complete() const;
  bool has_torsion_gaps() const;

  // Copy of the first lmax+1 levels.
  BigradedGroup truncated(int lmax) const;

 private:
  int lmax_ = -1;
  std::vector<std::vector<CellGroup>> cells_;  // cells_[l][k] for k <= l
};

// Magnitude homology of g up to level options.lmax. Levels that would
// overflow the trail budget, and torsion cells whose Smith form exceeds the
// guard, come back explicitly not computed. Results for a given (graph,
// options) signature are memoized per process; see also the CLI cache.
BigradedGroup compute_homology(const Graph& g, const HomologyOptions& options);

struct PowerSeries {
  std::vector<Int> coeffs;  // coeffs[l] multiplies q^l
  int lmax() const { return static_cast<int>(coeffs.size()) - 1; }
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;
};

// Coefficientwise alternating sum of chain group sizes (no homology).
PowerSeries magnitude_by_counting(const Graph& g, int lmax);

// Sum of the entries of the inverse similarity matrix, expanded per
// connected component as a geometric series and truncated at lmax.
PowerSeries magnitude_by_inverse_series(const Graph& g, int lmax);

// Alternating sum of homology ranks per level. Requires every rank cell of
// h to be computed; throws std::invalid_argument otherwise.
PowerSeries magnitude_by_euler(const BigradedGroup& h);

}  // namespace maghom
