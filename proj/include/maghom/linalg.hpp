#pragma once

#include <cstdint>
#include <vector>

#include "maghom/core.hpp"

namespace maghom {

// Column-major sparse matrix over the integers. Each column keeps its
// nonzero entries sorted by row. Dimensions may be zero.
class SparseIntMatrix {
 public:
  struct Entry {
    int row;
    Int val;
  };

  SparseIntMatrix() = default;
  SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(cols) {
    if (rows < 0 || cols < 0)
      throw std::invalid_argument("matrix: negative dimension");
  }

  static SparseIntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  // Entries must be appended in increasing row order per column; zero values
  // are dropped.
  void push(int col, int row, Int val);

  // Replaces a whole column; entries must be sorted by row, values nonzero.
  void set_column(int col, std::vector<Entry> entries);

  const std::vector<Entry>& column(int col) const { return data_[col]; }
  Int at(int row, int col) const;

  long nonzero_count() const;
  bool is_zero() const { return nonzero_count() == 0; }

  SparseIntMatrix transpose() const;
  friend SparseIntMatrix operator*(const SparseIntMatrix& a,
                                   const SparseIntMatrix& b);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

// Rank over GF(p) by sparse column elimination; a lower bound for the
// integer rank, equal to it for all but finitely many primes.
long rank_modular(const SparseIntMatrix& m, std::uint32_t p);

// Exact integer rank by fraction-free (Bareiss) elimination on a dense
// copy. Intended for escalation and for small matrices.
long rank_exact(const SparseIntMatrix& m);

struct SnfResult {
  // All invariant factors, including leading 1s; d_1 | d_2 | ... | d_r.
  std::vector<Int> factors;
  long rank() const { return static_cast<long>(factors.size()); }
  // The factors > 1, i.e. the torsion of the cokernel's finite part.
  std::vector<Int> torsion() const;
};

// Smith normal form over the integers. Eliminates with unit pivots while
// any exist (choosing the one minimizing fill), then runs the classical
// reduction on the dense remainder. `size_guard` bounds min(rows, cols);
// beyond it a ResourceLimitError is thrown so callers can report the cell
// as not computed instead of hanging.
SnfResult smith_normal_form(const SparseIntMatrix& m, long size_guard);

// Deterministic prime in (2^30, 2^31) derived from the seed; `attempt`
// selects successive distinct primes for the same seed.
std::uint32_t deterministic_prime(std::uint64_t seed, int attempt);

// SplitMix64; shared by prime selection and the seeded generators in tests.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace maghom
