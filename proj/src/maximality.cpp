#include "dff/maximality.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "dff/error.hpp"

namespace dff {

namespace {

Violation point_violation(ViolationKind kind, const Rational& x, Side side, const Rational& slack) {
  return Violation{kind, x, Rational(0), side, LimitPattern{}, slack};
}

void check_range(const PwlFunction& f, std::vector<Violation>& out) {
  auto check = [&](const Rational& x, Side side, const Rational& v) {
    if (v.sign() < 0) out.push_back(point_violation(ViolationKind::kRange, x, side, v));
    else if (v > 1) out.push_back(point_violation(ViolationKind::kRange, x, side, Rational(1) - v));
  };
  for (const auto& b : f.breakpoints()) {
    if (b.limit_left) check(b.x, Side::kLeft, *b.limit_left);
    check(b.x, Side::kAt, b.value);
    if (b.limit_right) check(b.x, Side::kRight, *b.limit_right);
  }
}

// Vertices of the complex (with every valid limit pattern when f jumps) with negative slack.
void scan_superadditivity(const PwlFunction& f, const std::function<bool(const VertexSlack&)>& sink) {
  std::vector<Rational> B = f.xs();
  bool continuous = f.is_continuous();
  for (const auto& [x, y] : complex_vertices(B)) {
    if (y < x) continue;  // slack is symmetric in (x, y) up to swapping the pattern
    for (const auto& p : all_patterns()) {
      if (continuous && p != LimitPattern{}) continue;
      if (!pattern_valid_at(p, x, y)) continue;
      Rational s = nabla_pattern(f, x, y, p);
      if (s.sign() < 0 && !sink(VertexSlack{x, y, p, s})) return;
    }
  }
}

void check_symmetry_unit(const PwlFunction& f, std::vector<Violation>& out) {
  std::set<Rational> pts;
  for (const auto& b : f.breakpoints()) {
    pts.insert(b.x);
    pts.insert(Rational(1) - b.x);
  }
  Rational half(1, 2);
  for (const auto& x : pts) {
    if (x > half) break;
    Rational y = Rational(1) - x;
    Rational d = f.evaluate(x) + f.evaluate(y) - 1;
    if (!d.is_zero()) out.push_back(point_violation(ViolationKind::kSymmetry, x, Side::kAt, d));
    if (x.sign() > 0) {
      d = f.limit(x, Side::kLeft) + f.limit(y, Side::kRight) - 1;
      if (!d.is_zero()) out.push_back(point_violation(ViolationKind::kSymmetry, x, Side::kLeft, d));
    }
    if (x < 1 && !(x == half)) {
      d = f.limit(x, Side::kRight) + f.limit(y, Side::kLeft) - 1;
      if (!d.is_zero()) out.push_back(point_violation(ViolationKind::kSymmetry, x, Side::kRight, d));
    }
  }
}

}  // namespace

const char* to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::kRange: return "range";
    case ViolationKind::kAtZero: return "at_zero";
    case ViolationKind::kSuperadditivity: return "superadditivity";
    case ViolationKind::kSymmetry: return "symmetry";
    case ViolationKind::kContinuityAt0: return "continuity_at_0";
    case ViolationKind::kContinuityAt1: return "continuity_at_1";
    case ViolationKind::kNonnegativeNearZero: return "nonnegative_near_0";
    case ViolationKind::kTailSlopes: return "tail_slopes";
  }
  return "unknown";
}

MaximalityVerdict maximality_test(const PwlFunction& f) {
  if (!f.on_unit_interval()) throw Error(ErrorKind::kOutOfDomain, "maximality_test needs a function on [0,1]");
  MaximalityVerdict v;
  auto& out = v.violations;
  check_range(f, out);
  Rational f0 = f.evaluate(0);
  if (!f0.is_zero()) out.push_back(point_violation(ViolationKind::kAtZero, 0, Side::kAt, f0));
  Rational d0 = f.limit(0, Side::kRight) - f0;
  if (!d0.is_zero()) out.push_back(point_violation(ViolationKind::kContinuityAt0, 0, Side::kRight, d0));
  Rational d1 = f.limit(1, Side::kLeft) - f.evaluate(1);
  if (!d1.is_zero()) out.push_back(point_violation(ViolationKind::kContinuityAt1, 1, Side::kLeft, d1));
  scan_superadditivity(f, [&](const VertexSlack& s) {
    out.push_back(Violation{ViolationKind::kSuperadditivity, s.x, s.y, Side::kAt, s.pattern, s.slack});
    return true;
  });
  check_symmetry_unit(f, out);
  v.is_maximal = out.empty();
  return v;
}

std::pair<bool, std::optional<VertexSlack>> is_superadditive(const PwlFunction& f) {
  std::optional<VertexSlack> worst;
  scan_superadditivity(f, [&](const VertexSlack& s) {
    if (!worst || s.slack < worst->slack) worst = s;
    return true;
  });
  return {!worst.has_value(), worst};
}

namespace {

// Slack check at all vertices of the arrangement of x in Bx, y in By, x+y in Bz inside a box.
void scan_gdff(const GdffFunction& psi, const std::vector<Rational>& Bx, const std::vector<Rational>& Bz,
               const std::optional<std::pair<Rational, Rational>>& box, std::vector<Violation>& out) {
  std::set<Point2> pts;
  auto in_box = [&](const Rational& t) { return !box || (box->first <= t && t <= box->second); };
  for (const auto& a : Bx) {
    for (const auto& b : Bx)
      if (in_box(a) && in_box(b)) pts.emplace(a, b);
    for (const auto& c : Bz) {
      Rational o = c - a;
      if (in_box(a) && in_box(o)) {
        pts.emplace(a, o);
        pts.emplace(o, a);
      }
    }
  }
  for (const auto& [x, y] : pts) {
    if (y < x) continue;
    for (const auto& p : all_patterns()) {
      Rational s = psi.limit(x + y, side_of(p.dz)) - psi.limit(x, side_of(p.dx)) - psi.limit(y, side_of(p.dy));
      if (s.sign() < 0) out.push_back(Violation{ViolationKind::kSuperadditivity, x, y, Side::kAt, p, s});
    }
  }
}

void check_symmetry_points(const GdffFunction& psi, const std::set<Rational>& pts, std::vector<Violation>& out) {
  for (const auto& x : pts) {
    Rational y = Rational(1) - x;
    Rational d = psi.evaluate(x) + psi.evaluate(y) - 1;
    if (!d.is_zero()) out.push_back(point_violation(ViolationKind::kSymmetry, x, Side::kAt, d));
    d = psi.limit(x, Side::kLeft) + psi.limit(y, Side::kRight) - 1;
    if (!d.is_zero()) out.push_back(point_violation(ViolationKind::kSymmetry, x, Side::kLeft, d));
    d = psi.limit(x, Side::kRight) + psi.limit(y, Side::kLeft) - 1;
    if (!d.is_zero()) out.push_back(point_violation(ViolationKind::kSymmetry, x, Side::kRight, d));
  }
}

}  // namespace

MaximalityVerdict gdff_maximality_sufficient(const GdffFunction& psi) {
  MaximalityVerdict v;
  auto& out = v.violations;
  const PwlFunction& core = psi.core();
  Rational p0 = psi.evaluate(0);
  if (!p0.is_zero()) out.push_back(point_violation(ViolationKind::kAtZero, 0, Side::kAt, p0));

  if (const auto* q = std::get_if<Quasiperiodic>(&psi.extension())) {
    Rational lo = core.lo(), hi = core.hi();
    std::vector<Rational> B = core.xs();
    std::vector<Rational> Bz = psi.breakpoints_in(lo + lo, hi + hi);
    scan_gdff(psi, B, Bz, std::make_pair(lo, hi), out);
    std::set<Rational> pts(B.begin(), B.end());
    for (const auto& b : B) {
      Rational t = Rational(1) - b;
      Rational k = ((t - lo) / q->period).floor();
      pts.insert(t - k * q->period);
    }
    check_symmetry_points(psi, pts, out);
  } else {
    const auto& t = std::get<AffineTails>(psi.extension());
    std::vector<Rational> B = core.xs();
    scan_gdff(psi, B, B, std::nullopt, out);
    if (t.left_slope < t.right_slope)
      out.push_back(point_violation(ViolationKind::kTailSlopes, 0, Side::kAt, t.left_slope - t.right_slope));
    std::set<Rational> pts(B.begin(), B.end());
    for (const auto& b : B) pts.insert(Rational(1) - b);
    check_symmetry_points(psi, pts, out);
    // both tails meet in the symmetry identity, so the slopes must agree
    if (t.left_slope != t.right_slope)
      out.push_back(point_violation(ViolationKind::kSymmetry, core.lo(), Side::kLeft, t.left_slope - t.right_slope));
  }

  // nonnegativity on (0, eps): sign of psi(0+), then of the slope just right of 0
  Rational r0 = psi.limit(0, Side::kRight);
  if (r0.sign() < 0) {
    out.push_back(point_violation(ViolationKind::kNonnegativeNearZero, 0, Side::kRight, r0));
  } else if (r0.is_zero()) {
    Rational span = core.hi() - core.lo();
    auto bps = psi.breakpoints_in(Rational(0), span + span.abs() + 1);
    Rational next;
    bool found = false;
    for (const auto& b : bps) {
      if (b.sign() > 0) {
        next = b;
        found = true;
        break;
      }
    }
    Rational slope;
    if (found) slope = (psi.limit(next, Side::kLeft) - r0) / next;
    else slope = std::get<AffineTails>(psi.extension()).right_slope;
    if (slope.sign() < 0)
      out.push_back(point_violation(ViolationKind::kNonnegativeNearZero, 0, Side::kRight, slope));
  }
  v.is_maximal = out.empty();
  return v;
}

KConditionReport gdff_k_condition_sampled(const GdffFunction& psi, const std::vector<Rational>& rs, int k_max) {
  KConditionReport rep;
  for (const auto& r : rs) {
    Rational pr = psi.evaluate(r);
    bool hit = false, bad = false;
    for (int k = 1; k <= k_max; ++k) {
      Rational rhs = (Rational(1) - psi.evaluate(Rational(1) - Rational(k) * r)) / k;
      if (pr > rhs) bad = true;
      if (pr == rhs) hit = true;
    }
    if (bad) {
      rep.consistent = false;
      rep.failures.push_back(r);
    }
    if (hit) ++rep.attained;
  }
  return rep;
}

}  // namespace dff
