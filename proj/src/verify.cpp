#include "maghom/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>

#include "maghom/dsl.hpp"

namespace maghom {

namespace {

using Cell = std::pair<int, int>;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string describe(const Graph& g) {
  return "graph(n=" + std::to_string(g.vertex_count()) +
         ", m=" + std::to_string(g.edge_count()) + ")";
}

Int to_int_checked(const std::optional<long>& rank, const char* what) {
  if (!rank)
    throw ResourceLimitError(std::string(what) +
                             ": a compared rank cell was not computed; raise "
                             "the resource limits");
  return Int(*rank);
}

// Sum of homology cells across several tables, tracking whether the summed
// torsion is fully known.
struct GroupSum {
  long rank = 0;
  std::vector<Int> torsion;
  bool torsion_known = true;

  void add(const CellGroup& c, const char* what) {
    rank += static_cast<long>(to_int_checked(c.rank, what).convert_to<long>());
    if (!c.torsion)
      torsion_known = false;
    else
      torsion.insert(torsion.end(), c.torsion->begin(), c.torsion->end());
  }

  std::string text(bool want_torsion) const {
    std::vector<Int> t = torsion;
    std::sort(t.begin(), t.end());
    std::string s = group_text(rank, t);
    if (want_torsion && !torsion_known) s += " (torsion not computed)";
    return s;
  }
};

void compare_groups(CheckReport& rep, int k, int l, GroupSum lhs, GroupSum rhs,
                    bool want_torsion) {
  std::sort(lhs.torsion.begin(), lhs.torsion.end());
  std::sort(rhs.torsion.begin(), rhs.torsion.end());
  bool torsion_compared =
      want_torsion && lhs.torsion_known && rhs.torsion_known;
  if (!torsion_compared) rep.ranks_only = true;
  bool eq = lhs.rank == rhs.rank &&
            (!torsion_compared || lhs.torsion == rhs.torsion);
  rep.cells.push_back(
      {k, l, lhs.text(want_torsion), rhs.text(want_torsion), eq});
  if (!eq) rep.verdict = CheckReport::Verdict::fail;
}

void compare_series(CheckReport& rep, const PowerSeries& lhs,
                    const PowerSeries& rhs, int lmax) {
  for (int l = 0; l <= lmax; ++l) {
    bool eq = lhs.coeffs[l] == rhs.coeffs[l];
    rep.cells.push_back(
        {-1, l, lhs.coeffs[l].str(), rhs.coeffs[l].str(), eq});
    if (!eq) rep.verdict = CheckReport::Verdict::fail;
  }
}

GroupSum cell_sum(std::initializer_list<const CellGroup*> cells,
                  const char* what) {
  GroupSum s;
  for (const CellGroup* c : cells) s.add(*c, what);
  return s;
}

HomologyOptions with(const HomologyOptions& base, int lmax, bool torsion) {
  HomologyOptions o = base;
  o.lmax = lmax;
  o.torsion = torsion;
  return o;
}

// Shared body of the diagonal-support checks: every stored cell with k < l
// must vanish; the Euler series must match the alternating diagonal.
CheckReport diagonal_body(const char* name, const Graph& g, int lmax,
                          const HomologyOptions& base) {
  Timer timer;
  CheckReport rep;
  rep.check = name;
  rep.graphs = {describe(g)};
  rep.lmax = lmax;
  BigradedGroup h = compute_homology(g, with(base, lmax, base.torsion));
  for (int l = 0; l <= lmax; ++l)
    for (int k = 0; k < l; ++k)
      compare_groups(rep, k, l, GroupSum{},
                     cell_sum({&h.cell(k, l)}, name), base.torsion);
  PowerSeries euler = magnitude_by_euler(h);
  PowerSeries diag;
  diag.coeffs.assign(lmax + 1, Int(0));
  for (int l = 0; l <= lmax; ++l) {
    long r = *h.cell(l, l).rank;
    diag.coeffs[l] = (l % 2 == 0) ? Int(r) : Int(-r);
  }
  compare_series(rep, diag, euler, lmax);
  rep.seconds = timer.elapsed();
  return rep;
}

}  // namespace

long CheckReport::failed_cells() const {
  return std::count_if(cells.begin(), cells.end(),
                       [](const CellComparison& c) { return !c.equal; });
}

std::string to_string(CheckReport::Verdict v) {
  switch (v) {
    case CheckReport::Verdict::pass: return "pass";
    case CheckReport::Verdict::fail: return "fail";
    case CheckReport::Verdict::inapplicable: return "inapplicable";
  }
  return "?";
}

std::string group_text(long rank, const std::vector<Int>& torsion) {
  if (rank == 0 && torsion.empty()) return "0";
  std::ostringstream os;
  os << rank;
  for (const Int& d : torsion) os << " + Z/" << d;
  return os.str();
}

AbGroup tensor_group(const AbGroup& a, const AbGroup& b) {
  AbGroup out;
  out.rank = a.rank * b.rank;
  for (const Int& d : a.torsion)
    for (long i = 0; i < b.rank; ++i) out.torsion.push_back(d);
  for (const Int& d : b.torsion)
    for (long i = 0; i < a.rank; ++i) out.torsion.push_back(d);
  for (const Int& d : a.torsion)
    for (const Int& e : b.torsion) {
      Int g = gcd(d, e);
      if (g > 1) out.torsion.push_back(g);
    }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

AbGroup tor_group(const AbGroup& a, const AbGroup& b) {
  AbGroup out;
  for (const Int& d : a.torsion)
    for (const Int& e : b.torsion) {
      Int g = gcd(d, e);
      if (g > 1) out.torsion.push_back(g);
    }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

std::map<Cell, AbGroup> kunneth_convolve(const std::map<Cell, AbGroup>& a,
                                         const std::map<Cell, AbGroup>& b,
                                         int lmax) {
  std::map<Cell, AbGroup> out;
  auto fold = [&](Cell at, AbGroup g) {
    if (g.rank == 0 && g.torsion.empty()) return;
    AbGroup& slot = out[at];
    slot.rank += g.rank;
    slot.torsion.insert(slot.torsion.end(), g.torsion.begin(), g.torsion.end());
  };
  for (const auto& [ca, ga] : a)
    for (const auto& [cb, gb] : b) {
      int k = ca.first + cb.first, l = ca.second + cb.second;
      if (l > lmax) continue;
      fold({k, l}, tensor_group(ga, gb));
      fold({k + 1, l}, tor_group(ga, gb));
    }
  for (auto& [c, g] : out) std::sort(g.torsion.begin(), g.torsion.end());
  return out;
}

CheckReport check_diagonal(const Graph& g, int lmax,
                           const HomologyOptions& base) {
  return diagonal_body("diagonal", g, lmax, base);
}

CheckReport check_disjoint_additivity(const Graph& g, const Graph& h, int lmax,
                                      const HomologyOptions& base) {
  Timer timer;
  CheckReport rep;
  rep.check = "disjoint-additivity";
  rep.graphs = {describe(g), describe(h)};
  rep.lmax = lmax;
  BigradedGroup hg = compute_homology(g, with(base, lmax, true));
  BigradedGroup hh = compute_homology(h, with(base, lmax, true));
  BigradedGroup hu = compute_homology(disjoint_union(g, h), with(base, lmax, true));
  for (int l = 0; l <= lmax; ++l)
    for (int k = 0; k <= l; ++k)
      compare_groups(rep, k, l,
                     cell_sum({&hg.cell(k, l), &hh.cell(k, l)}, rep.check.c_str()),
                     cell_sum({&hu.cell(k, l)}, rep.check.c_str()), true);
  rep.seconds = timer.elapsed();
  return rep;
}

CheckReport check_kunneth(const Graph& g, const Graph& h, int lmax,
                          const HomologyOptions& base) {
  Timer timer;
  CheckReport rep;
  rep.check = "kunneth";
  rep.graphs = {describe(g), describe(h)};
  rep.lmax = lmax;
  BigradedGroup ha = compute_homology(g, with(base, lmax, true));
  BigradedGroup hb = compute_homology(h, with(base, lmax, true));
  BigradedGroup hp = compute_homology(box_product(g, h), with(base, lmax, true));

  bool full = !ha.has_torsion_gaps() && !hb.has_torsion_gaps();
  auto to_map = [&](const BigradedGroup& t) {
    std::map<Cell, AbGroup> m;
    for (int l = 0; l <= t.lmax(); ++l)
      for (int k = 0; k <= l; ++k) {
        const CellGroup& c = t.cell(k, l);
        long r = to_int_checked(c.rank, "kunneth").convert_to<long>();
        std::vector<Int> tor;
        if (c.torsion) tor = *c.torsion;
        if (r != 0 || !tor.empty()) m[{k, l}] = {r, std::move(tor)};
      }
    return m;
  };
  auto pred = kunneth_convolve(to_map(ha), to_map(hb), lmax);
  if (!full) rep.ranks_only = true;

  for (int l = 0; l <= lmax; ++l)
    for (int k = 0; k <= l; ++k) {
      auto it = pred.find({k, l});
      GroupSum lhs;
      if (it != pred.end()) {
        lhs.rank = it->second.rank;
        lhs.torsion = it->second.torsion;
      }
      lhs.torsion_known = full;
      compare_groups(rep, k, l, std::move(lhs),
                     cell_sum({&hp.cell(k, l)}, "kunneth"), true);
    }
  rep.note = full ? "predicted from factor tables including torsion"
                  : "factor torsion incomplete; rank convolution only";
  rep.seconds = timer.elapsed();
  return rep;
}

CheckReport check_mayer_vietoris(const Graph& x, const std::vector<int>& gset,
                                 const std::vector<int>& hset, int lmax,
                                 const HomologyOptions& base) {
  Timer timer;
  CheckReport rep;
  rep.check = "mayer-vietoris";
  rep.graphs = {describe(x)};
  rep.lmax = lmax;

  DecompositionResult dec = analyze_decomposition(x, gset, hset);
  if (dec.status != DecompositionStatus::ok) {
    rep.verdict = CheckReport::Verdict::inapplicable;
    switch (dec.status) {
      case DecompositionStatus::cover_violation:
        rep.hypothesis = "every edge of X lies in G or in H";
        break;
      case DecompositionStatus::intersection_not_convex:
        rep.hypothesis = "G ∩ H is convex in X";
        break;
      default:
        rep.hypothesis = "H projects onto G ∩ H";
    }
    rep.note = dec.detail;
    rep.seconds = timer.elapsed();
    return rep;
  }
  const Decomposition& d = *dec.decomposition;

  BigradedGroup hx = compute_homology(x, with(base, lmax, true));
  BigradedGroup hg = compute_homology(d.g.graph, with(base, lmax, true));
  BigradedGroup hh = compute_homology(d.h.graph, with(base, lmax, true));
  BigradedGroup hi = compute_homology(d.intersection.graph, with(base, lmax, true));

  for (int l = 0; l <= lmax; ++l)
    for (int k = 0; k <= l; ++k)
      compare_groups(
          rep, k, l,
          cell_sum({&hg.cell(k, l), &hh.cell(k, l)}, "mayer-vietoris"),
          cell_sum({&hx.cell(k, l), &hi.cell(k, l)}, "mayer-vietoris"), true);

  // Inclusion-exclusion of the magnitude series, by trail counting.
  PowerSeries left = magnitude_by_counting(d.g.graph, lmax);
  PowerSeries sh = magnitude_by_counting(d.h.graph, lmax);
  PowerSeries right = magnitude_by_counting(x, lmax);
  PowerSeries si = magnitude_by_counting(d.intersection.graph, lmax);
  for (int l = 0; l <= lmax; ++l) {
    left.coeffs[l] += sh.coeffs[l];
    right.coeffs[l] += si.coeffs[l];
  }
  compare_series(rep, left, right, lmax);
  rep.seconds = timer.elapsed();
  return rep;
}

CheckReport check_tree_formula(const Graph& g, int lmax,
                               const HomologyOptions& base) {
  Timer timer;
  CheckReport rep;
  rep.check = "tree";
  rep.graphs = {describe(g)};
  rep.lmax = lmax;
  if (!is_tree(g)) {
    rep.verdict = CheckReport::Verdict::inapplicable;
    rep.hypothesis = "input graph is a tree";
    rep.seconds = timer.elapsed();
    return rep;
  }
  long n = g.vertex_count();
  BigradedGroup h = compute_homology(g, with(base, lmax, true));
  for (int l = 0; l <= lmax; ++l)
    for (int k = 0; k <= l; ++k) {
      GroupSum expect;
      if (k == l) expect.rank = (l == 0) ? n : 2 * (n - 1);
      compare_groups(rep, k, l, std::move(expect),
                     cell_sum({&h.cell(k, l)}, "tree"), true);
    }
  rep.seconds = timer.elapsed();
  return rep;
}

CheckReport check_join_diagonal(const Graph& g, const Graph& h, int lmax,
                                const HomologyOptions& base) {
  Timer timer;
  CheckReport rep;
  if (g.vertex_count() < 1 || h.vertex_count() < 1) {
    rep.check = "join-diagonal";
    rep.graphs = {describe(g), describe(h)};
    rep.lmax = lmax;
    rep.verdict = CheckReport::Verdict::inapplicable;
    rep.hypothesis = "both join factors are nonempty";
    rep.seconds = timer.elapsed();
    return rep;
  }
  rep = diagonal_body("join-diagonal", join_graphs(g, h), lmax, base);
  rep.graphs = {describe(g), describe(h)};
  return rep;
}

CheckReport check_cyclic_patterns(int n, int lmax, const HomologyOptions& base) {
  if (n < 3)
    throw std::invalid_argument("cyclic pattern check needs a cycle, n >= 3");
  Timer timer;
  CheckReport rep;
  rep.check = "cyclic";
  rep.graphs = {"C(" + std::to_string(n) + ")"};
  rep.lmax = lmax;

  std::map<Cell, long long> expected;
  if (n % 2 == 1) {
    std::map<std::pair<int, int>, long long> memo;
    std::function<long long(int, int)> t = [&](int i, int j) -> long long {
      if (i <= 0 || j <= 0) return 0;
      if (i == 1 && j == 1) return n;
      if (i == 1 && j == 2) return 2 * n;
      auto it = memo.find({i, j});
      if (it != memo.end()) return it->second;
      long long v = t(i, j - 1) + 2 * t(i - 1, j);
      memo[{i, j}] = v;
      return v;
    };
    int step = (n + 1) / 2;
    for (int i = 1; (i - 1) * step <= lmax; ++i)
      for (int j = 1; (i - 1) * step + (j - 1) <= lmax; ++j)
        expected[{2 * (i - 1) + (j - 1), (i - 1) * step + (j - 1)}] += t(i, j);
  } else {
    int step = n / 2;
    for (int i = 1; (i - 1) * step <= lmax; ++i)
      for (int j = 1; (i - 1) * step + (j - 1) <= lmax; ++j)
        expected[{2 * (i - 1) + (j - 1), (i - 1) * step + (j - 1)}] +=
            (j == 1) ? n : 2 * n;
  }

  BigradedGroup h =
      compute_homology(build_named("C", {n}), with(base, lmax, false));
  for (int l = 0; l <= lmax; ++l)
    for (int k = 0; k <= l; ++k) {
      auto it = expected.find({k, l});
      GroupSum lhs;
      lhs.rank = (it == expected.end()) ? 0 : static_cast<long>(it->second);
      compare_groups(rep, k, l, std::move(lhs),
                     cell_sum({&h.cell(k, l)}, "cyclic"), false);
    }
  rep.note =
      "rank table is consistent with the conjectured diagonal pattern up to "
      "lmax (a conjecture, not a theorem)";
  rep.seconds = timer.elapsed();
  return rep;
}

CheckReport check_support_bounds(const Graph& g, int lmax,
                                 const HomologyOptions& base) {
  Timer timer;
  CheckReport rep;
  rep.check = "support-bounds";
  rep.graphs = {describe(g)};
  rep.lmax = lmax;
  DistMatrix dm(g);
  long d = dm.max_finite();
  BigradedGroup h = compute_homology(g, with(base, lmax, base.torsion));
  for (int l = 1; l <= lmax; ++l)
    for (int k = 0; k <= l; ++k) {
      bool outside = l > k * d || (d > 1 && l == k * d);
      if (!outside) continue;
      compare_groups(rep, k, l, GroupSum{},
                     cell_sum({&h.cell(k, l)}, "support-bounds"), base.torsion);
    }
  rep.note = "largest finite distance d = " + std::to_string(d) +
             "; cells with l > k*d (or l = k*d when d > 1) must vanish";
  rep.seconds = timer.elapsed();
  return rep;
}

const std::vector<std::pair<std::string, Graph>>& builtin_corpus() {
  static const std::vector<std::pair<std::string, Graph>> corpus = [] {
    std::vector<std::string> specs = {
        "K(1)",
        "E(3)",
        "K(2)",
        "K(3)",
        "K(4)",
        "K(5)",
        "C(4)",
        "C(5)",
        "C(6)",
        "C(7)",
        "C(8)",
        "P(3)",
        "P(4)",
        "P(5)",
        "star(4)",
        "petersen",
        "wedge(C(5), 0, C(5), 0)",
        "[0-1, 1-2, 2-3, 3-4, 4-5, 5-6, 6-7, 0-7, 0-4]",
        "K(2) box K(2) box K(2)",
        "E(2) * E(2) * E(2)",
        "C(3) + K(2)",
        "[0-1, 0-2, 1-2, 1-3, 2-3]",
    };
    std::vector<std::pair<std::string, Graph>> out;
    for (const std::string& s : specs) out.emplace_back(s, parse_graph(s));
    return out;
  }();
  return corpus;
}

}  // namespace maghom
