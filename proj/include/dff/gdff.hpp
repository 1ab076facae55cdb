#pragma once

#include <variant>
#include <vector>

#include "dff/pwl.hpp"

namespace dff {

// psi(x) = left_anchor + left_slope*(x - lo) for x < lo and
// psi(x) = right_anchor + right_slope*(x - hi) for x > hi.
struct AffineTails {
  Rational left_slope;
  Rational left_anchor;
  Rational right_slope;
  Rational right_anchor;
  bool operator==(const AffineTails&) const = default;
};

// psi(x + period) = psi(x) + increment, core on [lo, lo + period].
struct Quasiperiodic {
  Rational period;
  Rational increment;
  bool operator==(const Quasiperiodic&) const = default;
};

using Extension = std::variant<AffineTails, Quasiperiodic>;

/// Function on the real line: a bounded core plus a rule outside it.
class GdffFunction {
 public:
  GdffFunction(PwlFunction core, Extension ext);

  const PwlFunction& core() const noexcept { return core_; }
  const Extension& extension() const noexcept { return ext_; }
  bool is_quasiperiodic() const noexcept { return std::holds_alternative<Quasiperiodic>(ext_); }

  Rational evaluate(const Rational& x) const;
  Rational limit(const Rational& x, Side side) const;
  // Breakpoints of psi inside [a, b] (core breakpoints and their translates).
  std::vector<Rational> breakpoints_in(const Rational& a, const Rational& b) const;

  bool operator==(const GdffFunction& o) const { return core_ == o.core_ && ext_ == o.ext_; }

 private:
  PwlFunction core_;
  Extension ext_;
};

// Restriction of psi to [lo, hi] as a canonical function.
PwlFunction restrict_to(const GdffFunction& psi, const Rational& lo, const Rational& hi);

}  // namespace dff
