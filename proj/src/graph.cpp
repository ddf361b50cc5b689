#include "maghom/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <stdexcept>

namespace maghom {

namespace {

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t x) {
  // FNV-1a over the 8 bytes of x.
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edges,
             std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (n_ < 0) throw std::invalid_argument("graph: negative vertex count");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw std::invalid_argument("graph: label count differs from vertex count");
  for (auto& [u, v] : edges_) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (u == v)
      throw std::invalid_argument("graph: loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw std::invalid_argument("graph: duplicate edge {" +
                                std::to_string(dup->first) + "," +
                                std::to_string(dup->second) + "}");
  adj_.assign(n_, {});
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  hash_ = fnv_mix(hash_, static_cast<std::uint64_t>(n_));
  for (auto [u, v] : edges_)
    hash_ = fnv_mix(hash_, (static_cast<std::uint64_t>(u) << 32) |
                               static_cast<std::uint32_t>(v));
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

DistMatrix::DistMatrix(const Graph& g) : n_(g.vertex_count()) {
  d_.assign(static_cast<size_t>(n_) * n_, Dist::inf());
  std::deque<int> queue;
  for (int s = 0; s < n_; ++s) {
    Dist* row = d_.data() + static_cast<size_t>(s) * n_;
    row[s] = Dist::finite(0);
    queue.clear();
    queue.push_back(s);
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      int dx = row[x].value();
      for (int y : g.neighbors(x)) {
        if (row[y].is_inf()) {
          row[y] = Dist::finite(dx + 1);
          queue.push_back(y);
        }
      }
    }
  }
  for (const Dist& d : d_)
    if (d.is_finite() && d.value() > max_finite_) max_finite_ = d.value();
}

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph star_graph(int n) {
  // Hub 0 plus n leaves.
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i) e.emplace_back(0, i);
  return Graph(n + 1, std::move(e));
}

Graph petersen_graph() {
  // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, 5 + (i + 2) % 5);
  }
  return Graph(10, std::move(e));
}

Graph icosahedral_graph() {
  // Apex 0 over pentagon 1..5, apex 11 under pentagon 6..10, antiprism band.
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(0, 1 + i);
    e.emplace_back(11, 6 + i);
    e.emplace_back(1 + i, 1 + (i + 1) % 5);
    e.emplace_back(6 + i, 6 + (i + 1) % 5);
    e.emplace_back(1 + i, 6 + i);
    e.emplace_back(1 + i, 6 + (i + 1) % 5);
  }
  return Graph(12, std::move(e));
}

}  // namespace

Graph lcf_graph(const std::vector<int>& offsets, int repeats) {
  if (offsets.empty() || repeats < 1)
    throw std::invalid_argument("lcf: need a nonempty offset list and repeat >= 1");
  int m = static_cast<int>(offsets.size());
  long long total = static_cast<long long>(m) * repeats;
  if (total < 3) throw std::invalid_argument("lcf: fewer than 3 vertices");
  int n = static_cast<int>(total);

  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);

  // Each vertex contributes the chord {v, v+j}; a consistent cubic notation
  // generates every chord exactly twice, once from each endpoint.
  std::map<std::pair<int, int>, int> chords;
  for (int v = 0; v < n; ++v) {
    int j = offsets[v % m];
    int r = ((v + j) % n + n) % n;
    if (r == v) throw std::invalid_argument("lcf: offset " + std::to_string(j) +
                                            " produces a loop");
    int jm = ((j % n) + n) % n;
    if (jm == 1 || jm == n - 1)
      throw std::invalid_argument("lcf: offset " + std::to_string(j) +
                                  " duplicates a Hamilton-cycle edge");
    chords[{std::min(v, r), std::max(v, r)}]++;
  }
  for (auto& [c, count] : chords) {
    if (count != 2)
      throw std::invalid_argument(
          "lcf: chord {" + std::to_string(c.first) + "," +
          std::to_string(c.second) + "} generated " + std::to_string(count) +
          " times (inconsistent notation)");
    e.push_back(c);
  }
  return Graph(n, std::move(e));
}

Graph build_named(const std::string& family, const std::vector<int>& params) {
  std::string f = lower(family);
  auto need = [&](size_t k) {
    if (params.size() != k)
      throw std::invalid_argument("family '" + family + "' takes " +
                                  std::to_string(k) + " parameter(s)");
  };
  auto arg = [&](int at_least) {
    int n = params[0];
    if (n < at_least)
      throw std::invalid_argument("family '" + family + "' needs n >= " +
                                  std::to_string(at_least));
    return n;
  };

  if (f == "k" || f == "complete") { need(1); return complete_graph(arg(1)); }
  if (f == "e" || f == "discrete" || f == "empty") { need(1); return Graph(arg(1), {}); }
  if (f == "c" || f == "cycle") { need(1); return cycle_graph(arg(3)); }
  if (f == "p" || f == "path") { need(1); return path_graph(arg(1)); }
  if (f == "star") { need(1); return star_graph(arg(1)); }
  if (f == "petersen") { need(0); return petersen_graph(); }
  if (f == "heawood") { need(0); return lcf_graph({5, -5}, 7); }
  if (f == "pappus") { need(0); return lcf_graph({5, 7, -7, 7, -7, -5}, 3); }
  if (f == "moebius_kantor") { need(0); return lcf_graph({5, -5}, 8); }
  if (f == "tutte_coxeter") { need(0); return lcf_graph({-13, -9, 7, -7, 9, 13}, 5); }
  if (f == "dodecahedral") {
    need(0);
    return lcf_graph({10, 7, 4, -4, -7, 10, -4, 7, -7, 4}, 2);
  }
  if (f == "icosahedral") { need(0); return icosahedral_graph(); }
  throw std::invalid_argument("unknown graph family '" + family + "'");
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  int ng = g.vertex_count();
  std::vector<std::pair<int, int>> e = g.edges();
  for (auto [u, v] : h.edges()) e.emplace_back(ng + u, ng + v);
  return Graph(ng + h.vertex_count(), std::move(e));
}

Graph box_product(const Graph& g, const Graph& h) {
  int ng = g.vertex_count(), nh = h.vertex_count();
  auto id = [nh](int x, int y) { return x * nh + y; };
  std::vector<std::pair<int, int>> e;
  for (int x = 0; x < ng; ++x)
    for (auto [u, v] : h.edges()) e.emplace_back(id(x, u), id(x, v));
  for (int y = 0; y < nh; ++y)
    for (auto [u, v] : g.edges()) e.emplace_back(id(u, y), id(v, y));
  return Graph(ng * nh, std::move(e));
}

Graph join_graphs(const Graph& g, const Graph& h) {
  int ng = g.vertex_count();
  std::vector<std::pair<int, int>> e = g.edges();
  for (auto [u, v] : h.edges()) e.emplace_back(ng + u, ng + v);
  for (int u = 0; u < ng; ++u)
    for (int v = 0; v < h.vertex_count(); ++v) e.emplace_back(u, ng + v);
  return Graph(ng + h.vertex_count(), std::move(e));
}

Graph wedge(const Graph& g, int g0, const Graph& h, int h0) {
  int ng = g.vertex_count(), nh = h.vertex_count();
  if (g0 < 0 || g0 >= ng || h0 < 0 || h0 >= nh)
    throw std::invalid_argument("wedge: basepoint out of range");
  auto hmap = [&](int v) { return v == h0 ? g0 : (v < h0 ? ng + v : ng + v - 1); };
  std::vector<std::pair<int, int>> e = g.edges();
  for (auto [u, v] : h.edges()) e.emplace_back(hmap(u), hmap(v));
  return Graph(ng + nh - 1, std::move(e));
}

namespace {

std::vector<int> checked_subset(const Graph& x, std::vector<int> subset,
                                const char* who) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (int v : subset)
    if (v < 0 || v >= x.vertex_count())
      throw std::invalid_argument(std::string(who) + ": vertex " +
                                  std::to_string(v) + " out of range");
  return subset;
}

}  // namespace

InducedSubgraph induced_subgraph(const Graph& x, const std::vector<int>& subset) {
  std::vector<int> s = checked_subset(x, subset, "induced_subgraph");
  std::vector<int> local(x.vertex_count(), -1);
  for (size_t i = 0; i < s.size(); ++i) local[s[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> e;
  for (auto [u, v] : x.edges())
    if (local[u] >= 0 && local[v] >= 0) e.emplace_back(local[u], local[v]);
  std::vector<std::string> labels;
  if (!x.labels().empty())
    for (int v : s) labels.push_back(x.labels()[v]);
  return {Graph(static_cast<int>(s.size()), std::move(e), std::move(labels)), s};
}

bool is_convex(const Graph& x, const std::vector<int>& subset) {
  auto sub = induced_subgraph(x, subset);
  DistMatrix amb(x), ind(sub.graph);
  int m = sub.graph.vertex_count();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (ind(i, j) != amb(sub.vertices[i], sub.vertices[j])) return false;
  return true;
}

namespace {

// `names` maps local vertex indices to display labels in `why` messages
// (used when x is an induced subgraph and failures should name ambient
// vertices); identity when null.
std::optional<std::vector<int>> projection_impl(const Graph& x,
                                                const std::vector<int>& subset,
                                                std::string* why,
                                                const std::vector<int>* names) {
  auto label = [&](int v) {
    return std::to_string(names ? (*names)[v] : v);
  };
  std::vector<int> u = checked_subset(x, subset, "projection");
  if (u.empty()) throw std::invalid_argument("projection: empty target set");
  if (!is_convex(x, u))
    throw std::invalid_argument("projection: target set is not convex");
  DistMatrix d(x);
  std::vector<int> proj(x.vertex_count(), -1);
  for (int v = 0; v < x.vertex_count(); ++v) {
    int best = -1;
    bool unique = true;
    for (int w : u) {
      if (d(v, w).is_inf()) continue;
      if (best < 0 || d(v, w) < d(v, best)) {
        best = w;
        unique = true;
      } else if (d(v, w) == d(v, best)) {
        unique = false;
      }
    }
    if (best < 0) continue;  // v cannot reach the set
    if (!unique) {
      if (why)
        *why = "vertex " + label(v) + " has no unique nearest point";
      return std::nullopt;
    }
    for (int w : u) {
      if (d(v, w) != d(v, best) + d(best, w)) {
        if (why)
          *why = "nearest point of vertex " + label(v) +
                 " is not a gate for vertex " + label(w);
        return std::nullopt;
      }
    }
    proj[v] = best;
  }
  return proj;
}

}  // namespace

std::optional<std::vector<int>> projection(const Graph& x,
                                           const std::vector<int>& subset) {
  return projection_impl(x, subset, nullptr, nullptr);
}

GraphMap validate_graph_map(const Graph& g, const Graph& h,
                            const std::vector<int>& vmap) {
  if (static_cast<int>(vmap.size()) != g.vertex_count())
    throw std::invalid_argument("graph map: image list has wrong length");
  for (int w : vmap)
    if (w < 0 || w >= h.vertex_count())
      throw std::invalid_argument("graph map: image vertex out of range");
  for (auto [u, v] : g.edges()) {
    if (vmap[u] != vmap[v] && !h.has_edge(vmap[u], vmap[v]))
      throw std::invalid_argument("graph map: edge {" + std::to_string(u) + "," +
                                  std::to_string(v) +
                                  "} maps to the non-edge {" +
                                  std::to_string(vmap[u]) + "," +
                                  std::to_string(vmap[v]) + "}");
  }
  return {g, h, vmap};
}

DecompositionResult analyze_decomposition(const Graph& x, std::vector<int> gset,
                                          std::vector<int> hset) {
  gset = checked_subset(x, std::move(gset), "decomposition");
  hset = checked_subset(x, std::move(hset), "decomposition");

  std::vector<char> in_g(x.vertex_count(), 0), in_h(x.vertex_count(), 0);
  for (int v : gset) in_g[v] = 1;
  for (int v : hset) in_h[v] = 1;
  for (int v = 0; v < x.vertex_count(); ++v)
    if (!in_g[v] && !in_h[v])
      throw std::invalid_argument("decomposition: vertex " + std::to_string(v) +
                                  " is in neither part");

  std::vector<int> inter;
  for (int v : gset)
    if (in_h[v]) inter.push_back(v);
  if (inter.empty())
    throw std::invalid_argument("decomposition: the parts do not intersect");

  DecompositionResult res;
  for (auto [u, v] : x.edges()) {
    if (!((in_g[u] && in_g[v]) || (in_h[u] && in_h[v]))) {
      res.status = DecompositionStatus::cover_violation;
      res.detail = "edge {" + std::to_string(u) + "," + std::to_string(v) +
                   "} lies in neither part";
      return res;
    }
  }

  if (!is_convex(x, inter)) {
    res.status = DecompositionStatus::intersection_not_convex;
    res.detail = "the intersection is not convex in the ambient graph";
    return res;
  }

  // The projection hypothesis is stated inside H: re-index and look for the
  // intersection there. Convexity in H follows from convexity in X (the
  // induced metric is squeezed between the two).
  auto h = induced_subgraph(x, hset);
  std::vector<int> inter_local;
  for (size_t i = 0; i < h.vertices.size(); ++i)
    if (in_g[h.vertices[i]]) inter_local.push_back(static_cast<int>(i));
  std::string why;
  auto proj_local = projection_impl(h.graph, inter_local, &why, &h.vertices);
  if (!proj_local) {
    res.status = DecompositionStatus::not_projecting;
    res.detail = "H does not project onto G \u2229 H (" + why + ")";
    return res;
  }

  Decomposition d;
  d.ambient = x;
  d.gset = gset;
  d.hset = hset;
  d.g = induced_subgraph(x, gset);
  d.h = std::move(h);
  d.intersection = induced_subgraph(x, inter);
  d.proj.assign(x.vertex_count(), -1);
  for (size_t i = 0; i < d.h.vertices.size(); ++i)
    if ((*proj_local)[i] >= 0)
      d.proj[d.h.vertices[i]] = d.h.vertices[(*proj_local)[i]];
  res.decomposition = std::move(d);
  return res;
}

std::vector<int> component_of(const Graph& g, int start) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> out, stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (int w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::vector<int>> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (seen[v]) continue;
    auto comp = component_of(g, v);
    for (int w : comp) seen[w] = 1;
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_tree(const Graph& g) {
  return g.vertex_count() >= 1 &&
         g.edge_count() == g.vertex_count() - 1 &&
         components(g).size() == 1;
}

}  // namespace maghom
