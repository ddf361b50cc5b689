#include "maghom/linalg.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace maghom {

SparseIntMatrix SparseIntMatrix::identity(int n) {
  SparseIntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.push(i, i, 1);
  return m;
}

void SparseIntMatrix::push(int col, int row, Int val) {
  if (col < 0 || col >= cols_ || row < 0 || row >= rows_)
    throw std::invalid_argument("matrix: index out of range");
  if (val == 0) return;
  auto& c = data_[col];
  if (!c.empty() && c.back().row >= row)
    throw std::invalid_argument("matrix: rows must be pushed in increasing order");
  c.push_back({row, std::move(val)});
}

void SparseIntMatrix::set_column(int col, std::vector<Entry> entries) {
  if (col < 0 || col >= cols_)
    throw std::invalid_argument("matrix: column out of range");
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].row < 0 || entries[i].row >= rows_ || entries[i].val == 0 ||
        (i > 0 && entries[i - 1].row >= entries[i].row))
      throw std::invalid_argument("matrix: malformed column");
  }
  data_[col] = std::move(entries);
}

Int SparseIntMatrix::at(int row, int col) const {
  const auto& c = data_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const Entry& e, int r) { return e.row < r; });
  return (it != c.end() && it->row == row) ? it->val : Int(0);
}

long SparseIntMatrix::nonzero_count() const {
  long n = 0;
  for (const auto& c : data_) n += static_cast<long>(c.size());
  return n;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols_, rows_);
  // Counting pass keeps each output column sorted without a final sort.
  std::vector<size_t> count(rows_, 0);
  for (const auto& c : data_)
    for (const auto& e : c) count[e.row]++;
  for (int r = 0; r < rows_; ++r) t.data_[r].reserve(count[r]);
  for (int c = 0; c < cols_; ++c)
    for (const auto& e : data_[c]) t.data_[e.row].push_back({c, e.val});
  return t;
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix: dimension mismatch in product");
  SparseIntMatrix out(a.rows(), b.cols());
  std::vector<Int> acc(a.rows(), 0);
  std::vector<int> touched;
  for (int j = 0; j < b.cols(); ++j) {
    touched.clear();
    for (const auto& be : b.column(j)) {
      for (const auto& ae : a.column(be.row)) {
        if (acc[ae.row] == 0) touched.push_back(ae.row);
        acc[ae.row] += ae.val * be.val;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int r : touched) {
      if (acc[r] != 0) out.push(j, r, acc[r]);
      acc[r] = 0;
    }
  }
  return out;
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % q == 0) return n == q;
  }
  std::uint32_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // Deterministic Miller-Rabin for 32-bit inputs.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  return powmod(a, p - 2, p);
}

using ModCol = std::vector<std::pair<int, std::uint32_t>>;

std::uint32_t reduce_entry(const Int& v, std::uint32_t p) {
  static const Int ll_min = std::numeric_limits<long long>::min();
  static const Int ll_max = std::numeric_limits<long long>::max();
  if (v >= ll_min && v <= ll_max) {
    long long x = v.convert_to<long long>() % static_cast<long long>(p);
    if (x < 0) x += p;
    return static_cast<std::uint32_t>(x);
  }
  Int r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

// a -= f * b (mod p), merging sorted columns. b's trailing row matches a's,
// so the lead entry of a always cancels.
void submul(ModCol& a, const ModCol& b, std::uint64_t f, std::uint64_t p,
            ModCol& tmp) {
  tmp.clear();
  tmp.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      tmp.push_back(a[i++]);
    } else if (a[i].first > b[j].first) {
      std::uint64_t w = (p - f * b[j].second % p) % p;
      if (w) tmp.emplace_back(b[j].first, static_cast<std::uint32_t>(w));
      ++j;
    } else {
      std::uint64_t w = (a[i].second + p - f * b[j].second % p) % p;
      if (w) tmp.emplace_back(a[i].first, static_cast<std::uint32_t>(w));
      ++i, ++j;
    }
  }
  for (; i < a.size(); ++i) tmp.push_back(a[i]);
  for (; j < b.size(); ++j) {
    std::uint64_t w = (p - f * b[j].second % p) % p;
    if (w) tmp.emplace_back(b[j].first, static_cast<std::uint32_t>(w));
  }
  a.swap(tmp);
}

long eliminate_mod_p(std::vector<ModCol> cols, int rows, std::uint32_t p) {
  // Light columns first: they create the least fill.
  std::vector<int> order(cols.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cols[a].size() < cols[b].size();
  });

  std::vector<int> owner(rows, -1);
  std::vector<ModCol> pivots;
  ModCol tmp;
  long rank = 0;
  for (int ci : order) {
    ModCol col = std::move(cols[ci]);
    while (!col.empty()) {
      auto [r, v] = col.back();
      int o = owner[r];
      if (o < 0) {
        if (v != 1) {
          std::uint64_t inv = inv_mod(v, p);
          for (auto& e : col)
            e.second = static_cast<std::uint32_t>(inv * e.second % p);
        }
        owner[r] = static_cast<int>(pivots.size());
        pivots.push_back(std::move(col));
        ++rank;
        break;
      }
      submul(col, pivots[o], v, p, tmp);
    }
  }
  return rank;
}

}  // namespace

long rank_modular(const SparseIntMatrix& m, std::uint32_t p) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Work on the orientation with fewer columns.
  bool flip = m.cols() > m.rows();
  int rows = flip ? m.cols() : m.rows();
  int cols = flip ? m.rows() : m.cols();
  std::vector<ModCol> data(cols);
  if (!flip) {
    for (int c = 0; c < cols; ++c) {
      data[c].reserve(m.column(c).size());
      for (const auto& e : m.column(c)) {
        std::uint32_t v = reduce_entry(e.val, p);
        if (v) data[c].emplace_back(e.row, v);
      }
    }
  } else {
    std::vector<size_t> count(cols, 0);
    for (int c = 0; c < m.cols(); ++c)
      for (const auto& e : m.column(c)) count[e.row]++;
    for (int c = 0; c < cols; ++c) data[c].reserve(count[c]);
    for (int c = 0; c < m.cols(); ++c)
      for (const auto& e : m.column(c)) {
        std::uint32_t v = reduce_entry(e.val, p);
        if (v) data[e.row].emplace_back(c, v);
      }
  }
  return eliminate_mod_p(std::move(data), rows, p);
}

long rank_exact(const SparseIntMatrix& m) {
  int R = m.rows(), C = m.cols();
  if (R == 0 || C == 0) return 0;
  if (static_cast<long long>(R) * C > 30'000'000)
    throw ResourceLimitError(
        "matrix too large for exact rank; use the modular or auto method");
  std::vector<std::vector<Int>> a(R, std::vector<Int>(C, 0));
  for (int c = 0; c < C; ++c)
    for (const auto& e : m.column(c)) a[e.row][c] = e.val;

  Int prev = 1;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int pr = -1;
    for (int i = r; i < R; ++i)
      if (a[i][c] != 0 && (pr < 0 || abs(a[i][c]) < abs(a[pr][c]))) pr = i;
    if (pr < 0) continue;
    std::swap(a[pr], a[r]);
    const Int piv = a[r][c];
    for (int i = r + 1; i < R; ++i) {
      for (int j = c + 1; j < C; ++j)
        a[i][j] = (piv * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = piv;
    ++r;
  }
  return r;
}

std::vector<Int> SnfResult::torsion() const {
  std::vector<Int> t;
  for (const Int& f : factors)
    if (f > 1) t.push_back(f);
  return t;
}

namespace {

// Classical Smith reduction on a dense matrix; returns the diagonal with the
// divisibility chain enforced.
std::vector<Int> snf_dense(std::vector<std::vector<Int>> a) {
  int R = static_cast<int>(a.size());
  int C = R ? static_cast<int>(a[0].size()) : 0;
  std::vector<Int> out;
  int t = 0;
  while (t < R && t < C) {
    // Smallest-magnitude nonzero of the trailing submatrix becomes the pivot.
    int pr = -1, pc = -1;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j)
        if (a[i][j] != 0 &&
            (pr < 0 || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(a[pr], a[t]);
    if (pc != t)
      for (int i = 0; i < R; ++i) std::swap(a[i][pc], a[i][t]);

    for (bool settled = false; !settled;) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (int i = t + 1; i < R; ++i) {
          if (a[i][t] == 0) continue;
          Int q = a[i][t] / a[t][t];
          if (q != 0)
            for (int j = t; j < C; ++j) a[i][j] -= q * a[t][j];
          if (a[i][t] != 0) {
            std::swap(a[i], a[t]);
            changed = true;
          }
        }
        for (int j = t + 1; j < C; ++j) {
          if (a[t][j] == 0) continue;
          Int q = a[t][j] / a[t][t];
          if (q != 0)
            for (int i = t; i < R; ++i) a[i][j] -= q * a[i][t];
          if (a[t][j] != 0) {
            for (int i = 0; i < R; ++i) std::swap(a[i][j], a[i][t]);
            changed = true;
          }
        }
      }
      // Row and column are clear; absorb any entry the pivot does not
      // divide, then reduce again.
      settled = true;
      for (int i = t + 1; i < R && settled; ++i)
        for (int j = t + 1; j < C && settled; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (int jj = t; jj < C; ++jj) a[t][jj] += a[i][jj];
            settled = false;
          }
    }
    out.push_back(abs(a[t][t]));
    ++t;
  }
  return out;
}

}  // namespace

SnfResult smith_normal_form(const SparseIntMatrix& m, long size_guard) {
  long mind = std::min(m.rows(), m.cols());
  if (mind > size_guard)
    throw ResourceLimitError("smith normal form: min(rows, cols) = " +
                             std::to_string(mind) + " exceeds the guard " +
                             std::to_string(size_guard));

  // Sparse phase: eliminate with unit pivots, which keeps every entry an
  // integer combination with unit coefficients and records factor 1 each.
  std::vector<std::map<int, Int>> rows(m.rows());
  std::vector<std::set<int>> colrows(m.cols());
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c)) {
      rows[e.row][c] = e.val;
      colrows[c].insert(e.row);
    }

  long ones = 0;
  std::vector<char> row_done(m.rows(), 0), col_done(m.cols(), 0);
  while (true) {
    int br = -1, bc = -1;
    long best = -1;
    for (int r = 0; r < m.rows(); ++r) {
      if (row_done[r]) continue;
      for (const auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        long score = (static_cast<long>(rows[r].size()) - 1) *
                     (static_cast<long>(colrows[c].size()) - 1);
        if (best < 0 || score < best) {
          best = score;
          br = r;
          bc = c;
        }
      }
    }
    if (br < 0) break;

    const Int pv = rows[br][bc];  // +1 or -1
    std::vector<int> victims(colrows[bc].begin(), colrows[bc].end());
    for (int r : victims) {
      if (r == br) continue;
      Int f = rows[r][bc] * pv;  // pv^2 == 1, so this cancels the entry
      for (const auto& [c, v] : rows[br]) {
        auto it = rows[r].find(c);
        if (it == rows[r].end()) {
          Int nv = -f * v;
          if (nv != 0) {
            rows[r][c] = std::move(nv);
            colrows[c].insert(r);
          }
        } else {
          it->second -= f * v;
          if (it->second == 0) {
            rows[r].erase(it);
            colrows[c].erase(r);
          }
        }
      }
    }
    // Column bc now holds only the pivot; discard its row and column.
    for (const auto& [c, v] : rows[br]) colrows[c].erase(br);
    rows[br].clear();
    row_done[br] = 1;
    col_done[bc] = 1;
    ++ones;
  }

  // Dense remainder.
  std::vector<int> live_rows, live_cols;
  std::vector<char> col_live(m.cols(), 0);
  for (int r = 0; r < m.rows(); ++r)
    if (!rows[r].empty()) live_rows.push_back(r);
  for (int r : live_rows)
    for (const auto& [c, v] : rows[r])
      if (!col_live[c]) {
        col_live[c] = 1;
        live_cols.push_back(c);
      }
  std::sort(live_cols.begin(), live_cols.end());
  std::vector<int> col_at(m.cols(), -1);
  for (size_t i = 0; i < live_cols.size(); ++i) col_at[live_cols[i]] = static_cast<int>(i);
  std::vector<std::vector<Int>> dense(live_rows.size(),
                                      std::vector<Int>(live_cols.size(), 0));
  for (size_t i = 0; i < live_rows.size(); ++i)
    for (const auto& [c, v] : rows[live_rows[i]]) dense[i][col_at[c]] = v;

  SnfResult res;
  res.factors.assign(ones, Int(1));
  for (Int& f : snf_dense(std::move(dense))) res.factors.push_back(std::move(f));
  return res;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint32_t deterministic_prime(std::uint64_t seed, int attempt) {
  std::uint64_t state = seed;
  std::vector<std::uint32_t> found;
  while (static_cast<int>(found.size()) <= attempt) {
    std::uint64_t x = splitmix64(state);
    std::uint32_t cand =
        static_cast<std::uint32_t>((1ull << 30) + 1 + (x % ((1ull << 30) - 2)));
    cand |= 1;
    if (is_prime_u32(cand) &&
        std::find(found.begin(), found.end(), cand) == found.end())
      found.push_back(cand);
  }
  return found.back();
}

}  // namespace maghom
