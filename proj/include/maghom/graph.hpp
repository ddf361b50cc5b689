#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maghom/core.hpp"

namespace maghom {

// Finite simple undirected graph. Vertices are 0..n-1; edges are stored
// normalized (u < v, sorted, duplicate-free). Instances are immutable after
// construction; every operation below returns a fresh graph.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<int, int>> edges,
        std::vector<std::string> labels = {});

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;
  const std::vector<std::string>& labels() const { return labels_; }

  // Stable fingerprint of (n, edge set); used for cache keys and for
  // seeding deterministic prime selection.
  std::uint64_t structural_hash() const { return hash_; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> labels_;
  std::uint64_t hash_ = 1469598103934665603ull;
};

// Full shortest-path metric, computed by BFS from every vertex.
class DistMatrix {
 public:
  DistMatrix() = default;
  explicit DistMatrix(const Graph& g);

  int size() const { return n_; }
  Dist operator()(int x, int y) const { return d_[static_cast<size_t>(x) * n_ + y]; }

  // Largest finite entry (graph diameter per component); 0 for empty graphs.
  int max_finite() const { return max_finite_; }

 private:
  int n_ = 0;
  int max_finite_ = 0;
  std::vector<Dist> d_;
};

// Named families. Family names are case-insensitive and accept the aliases
// K/complete, E/discrete/empty, C/cycle, P/path, star, plus the nullary
// families petersen, heawood, pappus, moebius_kantor, tutte_coxeter,
// icosahedral, dodecahedral. Throws std::invalid_argument on unknown names
// or out-of-range parameters (n >= 1; cycles need n >= 3).
Graph build_named(const std::string& family, const std::vector<int>& params);

// Cubic graph from LCF notation: a Hamilton cycle on m*repeats vertices plus
// the chord v -- v + offsets[v mod m] for every v. Rejects loops, offsets
// that duplicate Hamilton edges, and inconsistent chord lists (every chord
// must be generated exactly twice).
Graph lcf_graph(const std::vector<int>& offsets, int repeats);

// Combinators. Vertex numbering is part of the contract:
//   disjoint_union: G keeps its indices, H shifts by |V(G)|.
//   box_product:    (x, y) -> x * |V(H)| + y (row-major).
//   join_graphs:    disjoint-union numbering plus all cross edges.
//   wedge:          G keeps its indices; H re-indexes after G with its
//                   basepoint h0 identified to g0 (vertices above h0 shift
//                   down by one).
Graph disjoint_union(const Graph& g, const Graph& h);
Graph box_product(const Graph& g, const Graph& h);
Graph join_graphs(const Graph& g, const Graph& h);
Graph wedge(const Graph& g, int g0, const Graph& h, int h0);

// Induced subgraph on a vertex subset, re-indexed 0..|S|-1. `vertices[i]`
// translates local index i back to the ambient vertex.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> vertices;
};
InducedSubgraph induced_subgraph(const Graph& x, const std::vector<int>& subset);

// True when the induced metric on `subset` agrees with the ambient metric
// (infinity compares equal to infinity).
bool is_convex(const Graph& x, const std::vector<int>& subset);

// Nearest-point projection onto a convex subset U: defined on the vertices
// that can reach U, where the nearest point u in U is unique and satisfies
// d(x, w) = d(x, u) + d(u, w) for every w in U. Returns std::nullopt when
// some reachable vertex fails either condition; otherwise proj[x] is the
// ambient index of the nearest point (-1 for vertices that cannot reach U).
// Throws std::invalid_argument when U is not convex.
std::optional<std::vector<int>> projection(const Graph& x,
                                           const std::vector<int>& subset);

// Vertex map f: G -> H sending edges to edges or collapsing them.
struct GraphMap {
  Graph source;
  Graph target;
  std::vector<int> vmap;  // size |V(G)|, values in 0..|V(H)|-1
};

// Validates the map condition; throws std::invalid_argument naming the
// offending edge otherwise.
GraphMap validate_graph_map(const Graph& g, const Graph& h,
                            const std::vector<int>& vmap);

// A cover X = G ∪ H together with the derived pieces needed by the
// Mayer-Vietoris check. `proj[x]` (ambient indices, -1 outside its domain)
// is the projection of H onto G ∩ H computed inside H.
struct Decomposition {
  Graph ambient;
  std::vector<int> gset, hset;
  InducedSubgraph g, h, intersection;
  std::vector<int> proj;
};

enum class DecompositionStatus {
  ok,
  cover_violation,           // some edge of X lies in neither part
  intersection_not_convex,   // G ∩ H not convex in X
  not_projecting,            // H does not project onto G ∩ H
};

struct DecompositionResult {
  DecompositionStatus status = DecompositionStatus::ok;
  std::string detail;                      // human-readable reason on failure
  std::optional<Decomposition> decomposition;  // present when status == ok
};

// Checks the projecting-decomposition hypotheses for X = G ∪ H where G, H
// are the subgraphs induced on gset/hset. Requires gset ∪ hset = V(X) and a
// nonempty intersection; throws std::invalid_argument otherwise.
DecompositionResult analyze_decomposition(const Graph& x,
                                          std::vector<int> gset,
                                          std::vector<int> hset);

inline bool is_projecting_decomposition(const Graph& x,
                                        const std::vector<int>& gset,
                                        const std::vector<int>& hset) {
  return analyze_decomposition(x, gset, hset).status == DecompositionStatus::ok;
}

// Connectivity helpers shared by the engine and the checks.
std::vector<int> component_of(const Graph& g, int start);
std::vector<std::vector<int>> components(const Graph& g);
bool is_tree(const Graph& g);

}  // namespace maghom
