#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "maghom/graph.hpp"
#include "maghom/linalg.hpp"

namespace maghom {

// Basis of the chain group MC_{k,l}: all (k+1)-tuples of vertices with
// consecutive entries distinct and total path length exactly l, in
// lexicographic order.
struct GeneratorBasis {
  int k = 0;
  int l = 0;
  std::vector<std::vector<int>> trails;

  long size() const { return static_cast<long>(trails.size()); }

  // Position of a tuple in the basis, -1 if absent.
  long index_of(const std::vector<int>& t) const;
};

// Total length of a vertex tuple under the metric; infinite when some step
// crosses components or repeats a vertex consecutively (distance 0 steps are
// not trails and report as infinite here for convenience).
Dist trail_length(const DistMatrix& d, const std::vector<int>& t);

// Decrements `budget` (when given) once per emitted trail and throws
// ResourceLimitError when it runs out.
GeneratorBasis enumerate_generators(const Graph& g, const DistMatrix& d, int k,
                                    int l, std::atomic<long>* budget = nullptr);

// counts[l][k] = |MC_{k,l}| for 0 <= k <= l <= lmax, by dynamic programming
// over (steps, start vertex, remaining length); no trail is materialized.
std::vector<std::vector<Int>> chain_count_table(const Graph& g,
                                                const DistMatrix& d, int lmax);

// Matrix of the boundary MC_{k,l} -> MC_{k-1,l}: alternating sum, weight
// (-1)^(i-1) for deleting interior entry i, kept only when the deletion
// preserves the length (d(t[i-1],t[i]) + d(t[i],t[i+1]) = d(t[i-1],t[i+1])).
// Endpoints are never deleted; k = 1 therefore gives the zero matrix.
SparseIntMatrix boundary_matrix(const DistMatrix& d, const GeneratorBasis& from,
                                const GeneratorBasis& to);

// Matrix of f_#: MC_{k,l}(G) -> MC_{k,l}(H) for a graph map f, sending a
// trail to its image when the image is still a trail of the same length and
// to zero otherwise. Entries are 0/1; the chain-map identity with the
// boundary is a test invariant.
SparseIntMatrix induced_chain_map(const GraphMap& f, const DistMatrix& dh,
                                  const GeneratorBasis& src,
                                  const GeneratorBasis& dst);

// One term of an integer chain, used by the exterior product.
struct ChainTerm {
  std::vector<int> trail;
  Int coeff;
};

// Exterior product of a trail of G and a trail of H inside G box H (vertex
// (x, y) -> x*|V(H)| + y): sum over monotone lattice paths from (0,0) to
// (k1, k2), signed by the number of (up before right) step inversions.
// Terms come back sorted by trail.
std::vector<ChainTerm> exterior_product(const std::vector<int>& a,
                                        const std::vector<int>& b,
                                        int h_vertex_count);

// Process-wide memo for generator bases keyed by (graph hash, k, l); the
// homology engine shares bases between the boundary above and below a cell.
class BasisCache {
 public:
  std::shared_ptr<const GeneratorBasis> get(const Graph& g, const DistMatrix& d,
                                            int k, int l,
                                            std::atomic<long>* budget = nullptr);
  void clear();

 private:
  std::mutex mu_;
  std::map<std::tuple<std::uint64_t, int, int>,
           std::shared_ptr<const GeneratorBasis>>
      map_;
};

}  // namespace maghom
