#include "dff/gdff.hpp"

#include <set>

#include "dff/error.hpp"

namespace dff {

GdffFunction::GdffFunction(PwlFunction core, Extension ext) : core_(std::move(core)), ext_(std::move(ext)) {
  if (core_.empty()) throw Error(ErrorKind::kUnsupportedRepresentation, "empty core");
  if (const auto* q = std::get_if<Quasiperiodic>(&ext_)) {
    if (q->period.sign() <= 0) throw Error(ErrorKind::kUnsupportedRepresentation, "period must be positive");
    if (core_.hi() - core_.lo() != q->period)
      throw Error(ErrorKind::kUnsupportedRepresentation, "core must span exactly one period");
    if (core_.evaluate(core_.hi()) != core_.evaluate(core_.lo()) + q->increment)
      throw Error(ErrorKind::kUnsupportedRepresentation, "core end value breaks quasiperiodicity");
  }
}

Rational GdffFunction::evaluate(const Rational& x) const { return limit(x, Side::kAt); }

Rational GdffFunction::limit(const Rational& x, Side side) const {
  const Rational& lo = core_.lo();
  const Rational& hi = core_.hi();
  if (const auto* t = std::get_if<AffineTails>(&ext_)) {
    if (x < lo || (x == lo && side == Side::kLeft)) return t->left_anchor + t->left_slope * (x - lo);
    if (x > hi || (x == hi && side == Side::kRight)) return t->right_anchor + t->right_slope * (x - hi);
    return core_.limit(x, side);
  }
  const auto& q = std::get<Quasiperiodic>(ext_);
  Rational k = ((x - lo) / q.period).floor();
  Rational r = x - k * q.period;
  if (r == lo && side == Side::kLeft) return (k - 1) * q.increment + core_.limit(hi, Side::kLeft);
  return k * q.increment + core_.limit(r, side);
}

std::vector<Rational> GdffFunction::breakpoints_in(const Rational& a, const Rational& b) const {
  std::set<Rational> s;
  if (const auto* q = std::get_if<Quasiperiodic>(&ext_)) {
    Rational k0 = ((a - core_.lo()) / q->period).floor();
    for (Rational k = k0;; k += 1) {
      Rational shift = k * q->period;
      if (core_.lo() + shift > b) break;
      for (const auto& p : core_.breakpoints()) {
        Rational x = p.x + shift;
        if (x >= a && x <= b) s.insert(x);
      }
    }
  } else {
    for (const auto& p : core_.breakpoints())
      if (p.x >= a && p.x <= b) s.insert(p.x);
  }
  return {s.begin(), s.end()};
}

PwlFunction restrict_to(const GdffFunction& psi, const Rational& lo, const Rational& hi) {
  std::set<Rational> xs{lo, hi};
  for (const auto& x : psi.breakpoints_in(lo, hi)) xs.insert(x);
  std::vector<Breakpoint> bps;
  for (const auto& x : xs) {
    Breakpoint b{x, std::nullopt, psi.evaluate(x), std::nullopt};
    if (x > lo) b.limit_left = psi.limit(x, Side::kLeft);
    if (x < hi) b.limit_right = psi.limit(x, Side::kRight);
    bps.push_back(std::move(b));
  }
  return make_pwl_on(std::move(bps), lo, hi);
}

}  // namespace dff
