#include "maghom/homology.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace maghom {

std::string to_string(RankMethod m) {
  switch (m) {
    case RankMethod::automatic: return "auto";
    case RankMethod::exact: return "exact";
    case RankMethod::modular: return "modular";
  }
  return "?";
}

bool BigradedGroup::ranks_complete() const {
  for (const auto& level : cells_)
    for (const auto& c : level)
      if (!c.rank) return false;
  return true;
}

bool BigradedGroup::has_torsion_gaps() const {
  for (const auto& level : cells_)
    for (const auto& c : level)
      if (!c.torsion) return true;
  return false;
}

BigradedGroup BigradedGroup::truncated(int lmax) const {
  internal_check(lmax <= lmax_, "truncation cannot extend a table");
  BigradedGroup out(lmax);
  for (int l = 0; l <= lmax; ++l)
    for (int k = 0; k <= l; ++k) out.cells_[l][k] = cells_[l][k];
  return out;
}

namespace {

struct RankOutcome {
  long rank = 0;
  bool exact = false;  // known exactly (zero matrix or Bareiss)
};

RankOutcome compute_rank(const SparseIntMatrix& m, RankMethod method,
                         std::uint64_t seed) {
  if (m.rows() == 0 || m.cols() == 0 || m.nonzero_count() == 0)
    return {0, true};
  if (method == RankMethod::exact) return {rank_exact(m), true};

  long r1 = rank_modular(m, deterministic_prime(seed, 0));
  long r2 = rank_modular(m, deterministic_prime(seed, 1));
  if (r1 == r2) return {r1, false};

  if (method == RankMethod::automatic) return {rank_exact(m), true};

  // Forced modular: a prime disagreed, so sample further primes until two
  // agree on the running maximum (mod-p rank never exceeds the true rank).
  long best = std::max(r1, r2);
  int confirmations = (r1 == best) + (r2 == best);
  for (int attempt = 2; attempt < 8 && confirmations < 2; ++attempt) {
    long r = rank_modular(m, deterministic_prime(seed, attempt));
    if (r > best) {
      best = r;
      confirmations = 1;
    } else if (r == best) {
      ++confirmations;
    }
  }
  internal_check(confirmations >= 2, "modular ranks failed to stabilize");
  return {best, false};
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b * 0x9e3779b97f4a7c15ull);
  return splitmix64(s);
}

// Ranks and (optionally) torsion for one level l.
void compute_level(const Graph& g, const DistMatrix& d, int l,
                   const HomologyOptions& opt,
                   const std::vector<std::vector<Int>>& counts,
                   BasisCache& bases, std::atomic<long>* budget,
                   BigradedGroup& out, std::mutex& out_mu) {
  std::vector<long> brank(l + 2, 0);     // rank of the boundary out of MC_k
  std::vector<char> bexact(l + 2, 1);
  // torsion[k] = invariant factors > 1 of the boundary out of MC_{k+1}.
  std::vector<std::optional<std::vector<Int>>> torsion(l + 1);
  if (opt.torsion)
    for (int k = 0; k <= l; ++k) torsion[k] = std::vector<Int>{};

  auto below = bases.get(g, d, 0, l, budget);
  for (int k = 1; k <= l + 1; ++k) {
    std::shared_ptr<const GeneratorBasis> cur;
    if (k <= l) cur = bases.get(g, d, k, l, budget);
    bool empty = (k > l) || cur->size() == 0 || below->size() == 0 || k == 1;
    if (!empty) {
      SparseIntMatrix bd = boundary_matrix(d, *cur, *below);
      std::uint64_t seed =
          mix_seed(opt.seed, mix_seed(g.structural_hash(),
                                      (static_cast<std::uint64_t>(k) << 20) | l));
      RankOutcome r = compute_rank(bd, opt.method, seed);
      brank[k] = r.rank;
      bexact[k] = r.exact;
      if (opt.torsion && k - 1 <= l) {
        if (bd.nonzero_count() == 0) {
          torsion[k - 1] = std::vector<Int>{};
        } else {
          try {
            torsion[k - 1] = smith_normal_form(bd, opt.torsion_limit).torsion();
          } catch (const ResourceLimitError&) {
            torsion[k - 1] = std::nullopt;
          }
        }
      }
    }
    // Empty or degree-1 boundaries are zero: rank 0, no torsion, both of
    // which the initial values already say.
    below = std::move(cur);
  }

  std::lock_guard<std::mutex> lock(out_mu);
  for (int k = 0; k <= l; ++k) {
    CellGroup& cell = out.cell_mut(k, l);
    long ck = counts[l][k].convert_to<long>();
    long r = ck - brank[k] - brank[k + 1];
    internal_check(r >= 0, "negative homology rank");
    cell.rank = r;
    if (ck == 0)
      cell.method = "zero";
    else if (bexact[k] && bexact[k + 1])
      cell.method = "exact";
    else
      cell.method = "modular";
    if (opt.torsion) cell.torsion = torsion[k];
  }
}

struct MemoKey {
  std::uint64_t hash;
  bool torsion;
  RankMethod method;
  long torsion_limit;
  long max_trails;
  auto tie() const {
    return std::tie(hash, torsion, method, torsion_limit, max_trails);
  }
  bool operator<(const MemoKey& o) const { return tie() < o.tie(); }
};

struct TableMemo {
  std::mutex mu;
  std::map<MemoKey, std::vector<std::shared_ptr<const BigradedGroup>>> tables;

  std::optional<BigradedGroup> lookup(const MemoKey& key, int lmax) {
    std::lock_guard<std::mutex> lock(mu);
    // A stored table serves a request at lower lmax; an exact table serves
    // any method request with the same remaining signature.
    for (const auto& [k, list] : tables) {
      if (k.hash != key.hash || k.torsion != key.torsion ||
          k.torsion_limit != key.torsion_limit || k.max_trails != key.max_trails)
        continue;
      if (k.method != key.method && k.method != RankMethod::exact) continue;
      for (const auto& t : list)
        if (t->lmax() >= lmax && t->ranks_complete())
          return t->lmax() == lmax ? *t : t->truncated(lmax);
    }
    return std::nullopt;
  }

  void store(const MemoKey& key, BigradedGroup table) {
    std::lock_guard<std::mutex> lock(mu);
    auto& list = tables[key];
    list.push_back(std::make_shared<BigradedGroup>(std::move(table)));
    if (list.size() > 4) list.erase(list.begin());
  }
};

TableMemo& memo() {
  static TableMemo m;
  return m;
}

}  // namespace

BigradedGroup compute_homology(const Graph& g, const HomologyOptions& options) {
  if (options.lmax < 0)
    throw std::invalid_argument("homology: lmax must be nonnegative");
  if (options.torsion_limit > 20000)
    throw std::invalid_argument("homology: torsion guard is capped at 20000");
  if (options.max_trails < 1)
    throw std::invalid_argument("homology: trail budget must be positive");

  MemoKey key{g.structural_hash(), options.torsion, options.method,
              options.torsion_limit, options.max_trails};
  if (auto hit = memo().lookup(key, options.lmax)) return *hit;

  DistMatrix d(g);
  auto counts = chain_count_table(g, d, options.lmax);

  // Decide upfront which levels fit the trail budget; this keeps partial
  // tables deterministic no matter how levels are scheduled.
  BigradedGroup out(options.lmax);
  std::vector<int> todo;
  Int planned = 0;
  bool over = false;
  for (int l = 0; l <= options.lmax; ++l) {
    Int level_total = 0;
    for (int k = 0; k <= l; ++k) level_total += counts[l][k];
    if (!over && planned + level_total <= options.max_trails) {
      planned += level_total;
      todo.push_back(l);
    } else {
      over = true;
      for (int k = 0; k <= l; ++k)
        out.cell_mut(k, l).method = "skipped(max-trails)";
    }
  }

  BasisCache bases;
  std::atomic<long> budget{options.max_trails};
  std::mutex out_mu;

  int jobs = options.jobs > 0
                 ? options.jobs
                 : static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;

  if (jobs == 1 || todo.size() <= 1) {
    for (int l : todo)
      compute_level(g, d, l, options, counts, bases, &budget, out, out_mu);
  } else {
    // Work through levels heaviest-first so the stragglers finish together.
    std::vector<int> order = todo;
    std::sort(order.begin(), order.end(), std::greater<>());
    std::atomic<size_t> next{0};
    std::vector<std::future<void>> workers;
    int nw = std::min<int>(jobs, static_cast<int>(order.size()));
    for (int w = 0; w < nw; ++w)
      workers.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= order.size()) return;
          compute_level(g, d, order[i], options, counts, bases, &budget, out,
                        out_mu);
        }
      }));
    for (auto& w : workers) w.get();  // propagates the first exception
  }

  memo().store(key, out);
  return out;
}

PowerSeries magnitude_by_counting(const Graph& g, int lmax) {
  if (lmax < 0) throw std::invalid_argument("magnitude: lmax must be nonnegative");
  DistMatrix d(g);
  auto counts = chain_count_table(g, d, lmax);
  PowerSeries s;
  s.coeffs.assign(lmax + 1, Int(0));
  for (int l = 0; l <= lmax; ++l)
    for (int k = 0; k <= l; ++k) {
      if (k % 2 == 0)
        s.coeffs[l] += counts[l][k];
      else
        s.coeffs[l] -= counts[l][k];
    }
  return s;
}

PowerSeries magnitude_by_inverse_series(const Graph& g, int lmax) {
  if (lmax < 0) throw std::invalid_argument("magnitude: lmax must be nonnegative");
  PowerSeries s;
  s.coeffs.assign(lmax + 1, Int(0));
  for (const auto& comp : components(g)) {
    auto sub = induced_subgraph(g, comp);
    DistMatrix d(sub.graph);
    int n = sub.graph.vertex_count();
    // The similarity matrix is Z = I + N with N[x][y] = q^d(x,y) off the
    // diagonal; sum of entries of Z^-1 = sum_m (-1)^m 1^T N^m 1, and N^m has
    // no terms below q^m, so the series stops at m = lmax.
    std::vector<std::vector<Int>> cur(n, std::vector<Int>(lmax + 1, 0)),
        nxt(n, std::vector<Int>(lmax + 1, 0));
    for (int x = 0; x < n; ++x) cur[x][0] = 1;
    s.coeffs[0] += n;
    for (int m = 1; m <= lmax; ++m) {
      for (auto& row : nxt) std::fill(row.begin(), row.end(), Int(0));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          if (y == x) continue;
          int step = d(x, y).value();  // finite within a component
          for (int b = step; b <= lmax; ++b)
            if (cur[y][b - step] != 0) nxt[x][b] += cur[y][b - step];
        }
      std::swap(cur, nxt);
      for (int b = m; b <= lmax; ++b) {
        Int col = 0;
        for (int x = 0; x < n; ++x) col += cur[x][b];
        if (m % 2 == 0)
          s.coeffs[b] += col;
        else
          s.coeffs[b] -= col;
      }
    }
  }
  return s;
}

PowerSeries magnitude_by_euler(const BigradedGroup& h) {
  if (!h.ranks_complete())
    throw std::invalid_argument(
        "magnitude: homology table has uncomputed rank cells");
  PowerSeries s;
  s.coeffs.assign(h.lmax() + 1, Int(0));
  for (int l = 0; l <= h.lmax(); ++l)
    for (int k = 0; k <= l; ++k) {
      long r = *h.cell(k, l).rank;
      if (k % 2 == 0)
        s.coeffs[l] += r;
      else
        s.coeffs[l] -= r;
    }
  return s;
}

}  // namespace maghom
