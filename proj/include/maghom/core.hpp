#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace maghom {

// Exact integer type used for chain counts, matrix entries and torsion
// factors. Chain counts grow exponentially in l, so int64 is not enough.
using Int = boost::multiprecision::cpp_int;

// Shortest-path distance with an explicit infinity for disconnected pairs.
// Infinity is a sentinel, not a large integer: addition saturates and
// comparisons are total with inf greater than every finite value.
class Dist {
 public:
  constexpr Dist() : v_(0) {}

  static constexpr Dist finite(int d) { return Dist(d); }
  static constexpr Dist inf() { return Dist(-1); }

  constexpr bool is_inf() const { return v_ < 0; }
  constexpr bool is_finite() const { return v_ >= 0; }

  // Only valid on finite distances.
  constexpr int value() const { return v_; }

  friend constexpr Dist operator+(Dist a, Dist b) {
    if (a.is_inf() || b.is_inf()) return inf();
    return finite(a.v_ + b.v_);
  }

  friend constexpr bool operator==(Dist a, Dist b) { return a.v_ == b.v_; }

  friend constexpr std::strong_ordering operator<=>(Dist a, Dist b) {
    // Map infinity above every finite value; finite order is numeric.
    bool ia = a.is_inf(), ib = b.is_inf();
    if (ia || ib) return ia <=> ib;
    return a.v_ <=> b.v_;
  }

  std::string str() const { return is_inf() ? "inf" : std::to_string(v_); }

 private:
  explicit constexpr Dist(int v) : v_(v) {}
  int v_;  // -1 encodes infinity
};

// Thrown when a computation would exceed an explicit resource guard
// (trail budget, torsion size guard). Callers decide whether that is an
// error or a "not computed" cell.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse failure with a 1-based source position.
struct ParseError : std::runtime_error {
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg)), line(line_), col(col_) {}
  int line;
  int col;
};

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("internal invariant violated: " + what);
}

}  // namespace maghom
