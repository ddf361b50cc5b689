#pragma once

// Shared test helpers: a small chain calculus on explicit trails (an
// independent re-reading of the boundary definition), seeded random graphs,
// and exhaustive tree enumeration with canonical-form deduplication.

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "maghom/graph.hpp"
#include "maghom/magchain.hpp"

namespace testsupport {

using maghom::DistMatrix;
using maghom::Graph;
using maghom::Int;

using Trail = std::vector<int>;
using Chain = std::map<Trail, Int>;

inline void add_term(Chain& c, const Trail& t, const Int& v) {
  if (v == 0) return;
  auto it = c.emplace(t, 0).first;
  it->second += v;
  if (it->second == 0) c.erase(it);
}

// Boundary of a single generator, straight from the definition: delete
// interior entry i with sign (-1)^(i-1) when the two steps at i meet the
// triangle equality. Kept separate from the library so the boundary matrix
// has something independent to be checked against.
inline Chain boundary_of_trail(const DistMatrix& d, const Trail& t) {
  Chain out;
  int k = static_cast<int>(t.size()) - 1;
  for (int i = 1; i < k; ++i) {
    if (d(t[i - 1], t[i]) + d(t[i], t[i + 1]) != d(t[i - 1], t[i + 1]))
      continue;
    Trail face;
    face.reserve(t.size() - 1);
    for (int j = 0; j <= k; ++j)
      if (j != i) face.push_back(t[j]);
    add_term(out, face, (i % 2 == 1) ? Int(1) : Int(-1));
  }
  return out;
}

inline Chain boundary_of_chain(const DistMatrix& d, const Chain& c) {
  Chain out;
  for (const auto& [t, v] : c)
    for (const auto& [f, w] : boundary_of_trail(d, t)) add_term(out, f, v * w);
  return out;
}

inline Chain chain_sum(const Chain& a, const Chain& b) {
  Chain out = a;
  for (const auto& [t, v] : b) add_term(out, t, v);
  return out;
}

inline Chain chain_scale(const Chain& a, const Int& v) {
  Chain out;
  for (const auto& [t, w] : a) add_term(out, t, w * v);
  return out;
}

// Bilinear extension of the library's exterior product to whole chains.
inline Chain exterior_chain(const Chain& a, const Chain& b, int nh) {
  Chain out;
  for (const auto& [ta, va] : a)
    for (const auto& [tb, vb] : b)
      for (const auto& term : maghom::exterior_product(ta, tb, nh))
        add_term(out, term.trail, term.coeff * va * vb);
  return out;
}

// Uniform tuple with consecutive entries distinct; not necessarily of any
// particular total length.
inline Trail random_trail(const Graph& g, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1);
  Trail t(k + 1);
  t[0] = pick(rng);
  for (int i = 1; i <= k; ++i) {
    do t[i] = pick(rng);
    while (t[i] == t[i - 1]);
  }
  return t;
}

// Erdos-Renyi style random graph; p as numerator over 100.
inline Graph gnp(int n, int p_percent, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 99);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < p_percent) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

// Standard Pruefer decoding; seq values in [0, n) with n = |seq| + 2.
inline Graph tree_from_pruefer(const std::vector<int>& seq) {
  int n = static_cast<int>(seq.size()) + 2;
  std::vector<int> degree(n, 1);
  for (int v : seq) ++degree[v];
  std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  std::vector<std::pair<int, int>> edges;
  for (int v : seq) {
    int leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    if (--degree[v] == 1) leaves.push(v);
  }
  int a = leaves.top();
  leaves.pop();
  int b = leaves.top();
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return Graph(n, std::move(edges));
}

inline Graph random_tree(int n, std::mt19937_64& rng) {
  if (n == 1) return Graph(1, {});
  if (n == 2) return Graph(2, {{0, 1}});
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> seq(n - 2);
  for (int& v : seq) v = pick(rng);
  return tree_from_pruefer(seq);
}

inline std::string ahu_rooted(const Graph& g, int root, int parent) {
  std::vector<std::string> children;
  for (int w : g.neighbors(root))
    if (w != parent) children.push_back(ahu_rooted(g, w, root));
  std::sort(children.begin(), children.end());
  std::string s = "(";
  for (const std::string& c : children) s += c;
  return s + ")";
}

// The one or two middle vertices of a longest path; isomorphism-invariant,
// so rooting there canonicalizes the tree.
inline std::vector<int> tree_centers(const Graph& g) {
  int n = g.vertex_count();
  if (n <= 2) {
    std::vector<int> all(n);
    for (int v = 0; v < n; ++v) all[v] = v;
    return all;
  }
  std::vector<int> degree(n), order;
  for (int v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] == 1) order.push_back(v);
  }
  std::vector<char> removed(n, 0);
  std::size_t head = 0;
  int remaining = n;
  while (remaining > 2) {
    std::size_t layer_end = order.size();
    while (head < layer_end) {
      int v = order[head++];
      removed[v] = 1;
      --remaining;
      for (int w : g.neighbors(v))
        if (!removed[w] && --degree[w] == 1) order.push_back(w);
    }
  }
  std::vector<int> centers;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) centers.push_back(v);
  return centers;
}

inline std::string tree_canonical(const Graph& g) {
  std::string best;
  for (int r : tree_centers(g)) {
    std::string s = ahu_rooted(g, r, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

// Every tree on 1..nmax vertices, one representative per isomorphism class
// (1, 1, 1, 2, 3, 6, 11, 23 classes for n = 1..8).
inline std::vector<Graph> all_trees_up_to(int nmax) {
  std::vector<Graph> out;
  if (nmax >= 1) out.push_back(Graph(1, {}));
  if (nmax >= 2) out.push_back(Graph(2, {{0, 1}}));
  for (int n = 3; n <= nmax; ++n) {
    std::set<std::string> seen;
    std::vector<int> seq(n - 2, 0);
    while (true) {
      Graph t = tree_from_pruefer(seq);
      if (seen.insert(tree_canonical(t)).second) out.push_back(t);
      int i = n - 3;
      while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
      if (i < 0) break;
      ++seq[i];
    }
  }
  return out;
}

}  // namespace testsupport
