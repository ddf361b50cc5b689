#pragma once

#include <map>
#include <string>
#include <vector>

#include "maghom/homology.hpp"

namespace maghom {

// One compared quantity. k = -1 flags a series coefficient comparison for
// q^l instead of a bigraded cell.
struct CellComparison {
  int k = 0, l = 0;
  std::string lhs, rhs;
  bool equal = true;
};

struct CheckReport {
  enum class Verdict { pass, fail, inapplicable };

  std::string check;
  std::vector<std::string> graphs;  // display names of the inputs
  int lmax = 0;
  Verdict verdict = Verdict::pass;
  // True when some torsion was not computed (guard), so only ranks were
  // compared; a "pass" then explicitly means "pass (ranks only)".
  bool ranks_only = false;
  std::string hypothesis;  // the failed hypothesis when inapplicable
  std::string note;
  std::vector<CellComparison> cells;  // every compared quantity
  double seconds = 0;

  long failed_cells() const;
  bool passed() const { return verdict == Verdict::pass; }
};

std::string to_string(CheckReport::Verdict v);

// Finitely generated abelian group shape used by the Künneth prediction:
// free rank plus invariant factors (each > 1, ascending).
struct AbGroup {
  long rank = 0;
  std::vector<Int> torsion;
  friend bool operator==(const AbGroup&, const AbGroup&) = default;
};

AbGroup tensor_group(const AbGroup& a, const AbGroup& b);
AbGroup tor_group(const AbGroup& a, const AbGroup& b);

// Predicted MH_{k,l} of a box product from the factors' tables:
// sum of tensors over k1+k2 = k plus Tor terms over k1+k2 = k-1, both with
// l1+l2 = l. Key: (k, l).
std::map<std::pair<int, int>, AbGroup> kunneth_convolve(
    const std::map<std::pair<int, int>, AbGroup>& a,
    const std::map<std::pair<int, int>, AbGroup>& b, int lmax);

// "0", "4", "4 + Z/2", ... ; shared by reports and table rendering.
std::string group_text(long rank, const std::vector<Int>& torsion);

// Structural checks. Every check computes homology itself (through the
// process memo); `base` carries engine options other than lmax/torsion,
// which the checks pin as they need.

// MH_{k,l} = 0 off the diagonal; also re-derives the magnitude series from
// the diagonal and compares it with the Euler series of the table.
CheckReport check_diagonal(const Graph& g, int lmax,
                           const HomologyOptions& base = {});

// MH(G ⊔ H) = MH(G) ⊕ MH(H) cellwise.
CheckReport check_disjoint_additivity(const Graph& g, const Graph& h, int lmax,
                                      const HomologyOptions& base = {});

// Box-product table against the Künneth prediction from the factors.
CheckReport check_kunneth(const Graph& g, const Graph& h, int lmax,
                          const HomologyOptions& base = {});

// For a projecting decomposition X = G ∪ H: MH(G) ⊕ MH(H) = MH(X) ⊕ MH(G∩H)
// cellwise, plus inclusion-exclusion of the magnitude series. Inapplicable
// (with the failed hypothesis named) when the decomposition is not
// projecting.
CheckReport check_mayer_vietoris(const Graph& x, const std::vector<int>& gset,
                                 const std::vector<int>& hset, int lmax,
                                 const HomologyOptions& base = {});

// Trees: MH_{0,0} = n, MH_{l,l} = 2(n-1), everything else zero, no torsion.
CheckReport check_tree_formula(const Graph& g, int lmax,
                               const HomologyOptions& base = {});

// Joins of nonempty graphs are diagonal.
CheckReport check_join_diagonal(const Graph& g, const Graph& h, int lmax,
                                const HomologyOptions& base = {});

// Rank table of C_n against the conjectured diagonal pattern (summing
// overlapping diagonals). A pass is consistency, not a proof; the note says
// so.
CheckReport check_cyclic_patterns(int n, int lmax,
                                  const HomologyOptions& base = {});

// Support bounds: nonzero MH_{k,l} needs k <= l <= k*d (d = largest finite
// distance), strictly l < k*d when d > 1 and l > 0.
CheckReport check_support_bounds(const Graph& g, int lmax,
                                 const HomologyOptions& base = {});

// Small named graphs exercised by property tests and `sweep`.
const std::vector<std::pair<std::string, Graph>>& builtin_corpus();

}  // namespace maghom
