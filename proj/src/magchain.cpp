#include "maghom/magchain.hpp"

#include <algorithm>

namespace maghom {

long GeneratorBasis::index_of(const std::vector<int>& t) const {
  auto it = std::lower_bound(trails.begin(), trails.end(), t);
  if (it == trails.end() || *it != t) return -1;
  return static_cast<long>(it - trails.begin());
}

Dist trail_length(const DistMatrix& d, const std::vector<int>& t) {
  Dist total = Dist::finite(0);
  for (size_t i = 0; i + 1 < t.size(); ++i) {
    Dist step = d(t[i], t[i + 1]);
    if (step.is_inf() || step.value() == 0) return Dist::inf();
    total = total + step;
  }
  return total;
}

namespace {

void extend_trail(const DistMatrix& d, int n, int k, std::vector<int>& prefix,
                  int budget, std::vector<std::vector<int>>& out,
                  std::atomic<long>* guard) {
  int steps_left = k - (static_cast<int>(prefix.size()) - 1);
  if (steps_left == 0) {
    if (budget == 0) {
      if (guard && guard->fetch_sub(1) <= 0)
        throw ResourceLimitError("trail budget exhausted during enumeration");
      out.push_back(prefix);
    }
    return;
  }
  int x = prefix.back();
  // Every remaining step costs at least 1.
  int cap = budget - (steps_left - 1);
  for (int y = 0; y < n; ++y) {
    if (y == x) continue;
    Dist dy = d(x, y);
    if (dy.is_inf() || dy.value() > cap) continue;
    if (steps_left == 1 && dy.value() != budget) continue;
    prefix.push_back(y);
    extend_trail(d, n, k, prefix, budget - dy.value(), out, guard);
    prefix.pop_back();
  }
}

}  // namespace

GeneratorBasis enumerate_generators(const Graph& g, const DistMatrix& d, int k,
                                    int l, std::atomic<long>* budget) {
  if (k < 0 || l < 0) throw std::invalid_argument("enumerate_generators: negative grade");
  GeneratorBasis b;
  b.k = k;
  b.l = l;
  if (k == 0) {
    if (l == 0)
      for (int v = 0; v < g.vertex_count(); ++v) b.trails.push_back({v});
    return b;
  }
  if (l < k) return b;  // every step has length >= 1
  std::vector<int> prefix;
  prefix.reserve(k + 1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    prefix.assign(1, v);
    extend_trail(d, g.vertex_count(), k, prefix, l, b.trails, budget);
  }
  // Depth-first in ascending vertex order emits tuples lexicographically.
  return b;
}

std::vector<std::vector<Int>> chain_count_table(const Graph& g,
                                                const DistMatrix& d, int lmax) {
  int n = g.vertex_count();
  // f[k][x*(lmax+1)+b] = number of k-step tuples starting at x with total
  // length exactly b.
  std::vector<std::vector<Int>> table(lmax + 1);
  for (int l = 0; l <= lmax; ++l) table[l].assign(l + 1, Int(0));
  if (n == 0) return table;

  std::vector<Int> cur(static_cast<size_t>(n) * (lmax + 1), Int(0)),
      next(cur.size(), Int(0));
  for (int x = 0; x < n; ++x) cur[static_cast<size_t>(x) * (lmax + 1)] = 1;
  for (int l = 0; l <= lmax; ++l) table[l][0] = (l == 0) ? Int(n) : Int(0);

  for (int k = 1; k <= lmax; ++k) {
    for (auto& v : next) v = 0;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (y == x) continue;
        Dist step = d(x, y);
        if (step.is_inf()) continue;
        int s = step.value();
        for (int b = s; b <= lmax; ++b) {
          const Int& c = cur[static_cast<size_t>(y) * (lmax + 1) + (b - s)];
          if (c != 0) next[static_cast<size_t>(x) * (lmax + 1) + b] += c;
        }
      }
    }
    std::swap(cur, next);
    for (int l = k; l <= lmax; ++l) {
      Int total = 0;
      for (int x = 0; x < n; ++x) total += cur[static_cast<size_t>(x) * (lmax + 1) + l];
      table[l][k] = std::move(total);
    }
  }
  return table;
}

SparseIntMatrix boundary_matrix(const DistMatrix& d, const GeneratorBasis& from,
                                const GeneratorBasis& to) {
  internal_check(from.k == to.k + 1 && from.l == to.l,
                 "boundary_matrix grading mismatch");
  SparseIntMatrix m(static_cast<int>(to.size()), static_cast<int>(from.size()));
  int k = from.k;
  std::vector<int> shorter;
  std::vector<SparseIntMatrix::Entry> col;
  for (long j = 0; j < from.size(); ++j) {
    const auto& t = from.trails[j];
    col.clear();
    for (int i = 1; i < k; ++i) {
      // Deleting entry i keeps the length exactly when the triangle through
      // it is tight. A deletion that would create a consecutive repeat has
      // d(t[i-1], t[i+1]) = 0 and can never be tight.
      if (d(t[i - 1], t[i]) + d(t[i], t[i + 1]) != d(t[i - 1], t[i + 1]))
        continue;
      shorter.clear();
      shorter.insert(shorter.end(), t.begin(), t.begin() + i);
      shorter.insert(shorter.end(), t.begin() + i + 1, t.end());
      long r = to.index_of(shorter);
      internal_check(r >= 0, "boundary face missing from basis");
      col.push_back({static_cast<int>(r), (i % 2 == 1) ? Int(1) : Int(-1)});
    }
    std::sort(col.begin(), col.end(),
              [](const auto& a, const auto& b) { return a.row < b.row; });
    // Distinct deletions give distinct faces (consecutive entries differ),
    // so no coefficients merge.
    m.set_column(static_cast<int>(j), col);
  }
  return m;
}

SparseIntMatrix induced_chain_map(const GraphMap& f, const DistMatrix& dh,
                                  const GeneratorBasis& src,
                                  const GeneratorBasis& dst) {
  internal_check(src.k == dst.k && src.l == dst.l,
                 "induced_chain_map grading mismatch");
  SparseIntMatrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  std::vector<int> image;
  for (long j = 0; j < src.size(); ++j) {
    image.clear();
    for (int v : src.trails[j]) image.push_back(f.vmap[v]);
    // Graph maps are distance-nonincreasing, so the image length is <= l;
    // the trail survives only when no step collapses and none shortens.
    if (trail_length(dh, image) != Dist::finite(src.l)) continue;
    long r = dst.index_of(image);
    internal_check(r >= 0, "image trail missing from target basis");
    m.push(static_cast<int>(j), static_cast<int>(r), 1);
  }
  return m;
}

std::vector<ChainTerm> exterior_product(const std::vector<int>& a,
                                        const std::vector<int>& b,
                                        int h_vertex_count) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("exterior_product: empty trail");
  int k1 = static_cast<int>(a.size()) - 1;
  int k2 = static_cast<int>(b.size()) - 1;
  std::vector<ChainTerm> out;
  // steps: false = advance in a (right), true = advance in b (up).
  std::vector<bool> steps(k1 + k2, false);
  std::fill(steps.begin() + k1, steps.end(), true);
  // Iterate all shuffles in permutation order.
  std::sort(steps.begin(), steps.end());
  do {
    int i = 0, j = 0, inversions = 0, ups = 0;
    std::vector<int> trail{a[0] * h_vertex_count + b[0]};
    for (bool up : steps) {
      if (up) {
        ++ups;
        ++j;
      } else {
        inversions += ups;
        ++i;
      }
      trail.push_back(a[i] * h_vertex_count + b[j]);
    }
    out.push_back({std::move(trail), (inversions % 2 == 0) ? Int(1) : Int(-1)});
  } while (std::next_permutation(steps.begin(), steps.end()));
  std::sort(out.begin(), out.end(),
            [](const ChainTerm& x, const ChainTerm& y) { return x.trail < y.trail; });
  return out;
}

std::shared_ptr<const GeneratorBasis> BasisCache::get(const Graph& g,
                                                      const DistMatrix& d, int k,
                                                      int l,
                                                      std::atomic<long>* budget) {
  std::tuple<std::uint64_t, int, int> key{g.structural_hash(), k, l};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }
  auto basis = std::make_shared<GeneratorBasis>(enumerate_generators(g, d, k, l, budget));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = map_.emplace(key, std::move(basis));
  return it->second;
}

void BasisCache::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  map_.clear();
}

}  // namespace maghom
