#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dff/rational.hpp"

namespace dff {

enum class Side { kLeft, kAt, kRight };

struct Breakpoint {
  Rational x;
  std::optional<Rational> limit_left;
  Rational value;
  std::optional<Rational> limit_right;

  bool operator==(const Breakpoint&) const = default;
};

/// Piecewise-linear function on a closed interval, possibly discontinuous.
/// Always held in canonical form: interior limits are filled in, there is no
/// limit outside the domain, and no breakpoint is removable.
class PwlFunction {
 public:
  PwlFunction() = default;

  const std::vector<Breakpoint>& breakpoints() const noexcept { return bp_; }
  std::size_t size() const noexcept { return bp_.size(); }
  bool empty() const noexcept { return bp_.empty(); }
  const Rational& lo() const { return bp_.front().x; }
  const Rational& hi() const { return bp_.back().x; }
  bool on_unit_interval() const { return !bp_.empty() && lo() == 0 && hi() == 1; }

  Rational evaluate(const Rational& x) const;
  Rational limit(const Rational& x, Side side) const;
  bool is_continuous() const;

  std::size_t num_pieces() const noexcept { return bp_.empty() ? 0 : bp_.size() - 1; }
  // Piece i lives on (x_i, x_{i+1}).
  Rational piece_slope(std::size_t i) const;
  // Affine formula of piece i evaluated at x (x need not lie in the piece).
  Rational piece_value(std::size_t i, const Rational& x) const;
  // Index of the piece whose closure contains x, preferring the piece on `side`.
  std::size_t piece_index(const Rational& x, Side side = Side::kRight) const;
  // Index of the breakpoint at x, if any.
  std::optional<std::size_t> find_breakpoint(const Rational& x) const;

  std::vector<Rational> xs() const;

  bool operator==(const PwlFunction& o) const { return bp_ == o.bp_; }

 private:
  friend PwlFunction make_pwl_on(std::vector<Breakpoint>, const Rational&, const Rational&);
  std::vector<Breakpoint> bp_;
};

/// Builds a canonical function on [0,1].
PwlFunction make_pwl(std::vector<Breakpoint> points);
/// Builds a canonical function on [lo,hi].
PwlFunction make_pwl_on(std::vector<Breakpoint> points, const Rational& lo, const Rational& hi);
/// Continuous interpolant of (x, y) pairs on [0,1].
PwlFunction make_continuous(const std::vector<std::pair<Rational, Rational>>& points);

Rational evaluate(const PwlFunction& f, const Rational& x);
Rational limit(const PwlFunction& f, const Rational& x, Side side);

struct GridLimits {
  // Indexed by grid point i in 0..q; left[0] and right[q] are ignored.
  std::vector<Rational> left;
  std::vector<Rational> right;
};

PwlFunction interpolate_discrete(const std::map<int, Rational>& values, int q,
                                 const GridLimits* limits = nullptr);
PwlFunction interpolate_discrete(const std::vector<Rational>& values, int q,
                                 const GridLimits* limits = nullptr);

PwlFunction convex_combination(const PwlFunction& f1, const PwlFunction& f2, const Rational& alpha);
// a*f1 + b*f2 with arbitrary coefficients, on a shared domain.
PwlFunction linear_combination(const Rational& a, const PwlFunction& f1, const Rational& b,
                               const PwlFunction& f2);
PwlFunction compose(const PwlFunction& outer, const PwlFunction& inner);
Rational integrate(const PwlFunction& f, const Rational& a, const Rational& b);

// Distinct piece slopes, sorted.
std::vector<Rational> distinct_slopes(const PwlFunction& f);
// Full (left, value, right) data of f at an arbitrary point.
Breakpoint sample(const PwlFunction& f, const Rational& x);

}  // namespace dff
