#include "dff/pwl.hpp"

#include <algorithm>
#include <set>

#include "dff/error.hpp"

namespace dff {

namespace {

bool removable(const Breakpoint& a, const Breakpoint& m, const Breakpoint& c) {
  if (*m.limit_left != m.value || *m.limit_right != m.value) return false;
  Rational sl = (m.value - *a.limit_right) / (m.x - a.x);
  Rational sr = (*c.limit_left - m.value) / (c.x - m.x);
  return sl == sr;
}

}  // namespace

PwlFunction make_pwl_on(std::vector<Breakpoint> points, const Rational& lo, const Rational& hi) {
  if (points.size() < 2) throw Error(ErrorKind::kNonCanonicalDomain, "need at least two breakpoints");
  if (points.front().x != lo || points.back().x != hi)
    throw Error(ErrorKind::kNonCanonicalDomain,
                "breakpoints must span [" + lo.str() + "," + hi.str() + "]");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].x == points[i - 1].x)
      throw Error(ErrorKind::kDuplicateBreakpoint, "x=" + points[i].x.str());
    if (points[i].x < points[i - 1].x)
      throw Error(ErrorKind::kInvalidBreakpoint, "breakpoints not sorted at x=" + points[i].x.str());
  }
  if (points.front().limit_left)
    throw Error(ErrorKind::kInvalidBreakpoint, "left limit given at the left end of the domain");
  if (points.back().limit_right)
    throw Error(ErrorKind::kInvalidBreakpoint, "right limit given at the right end of the domain");
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& p = points[i];
    if (i > 0 && !p.limit_left) p.limit_left = p.value;
    if (i + 1 < points.size() && !p.limit_right) p.limit_right = p.value;
  }
  std::vector<Breakpoint> out;
  out.reserve(points.size());
  for (auto& p : points) {
    out.push_back(std::move(p));
    while (out.size() >= 3 && removable(out[out.size() - 3], out[out.size() - 2], out.back())) {
      out.erase(out.end() - 2);
    }
  }
  PwlFunction f;
  f.bp_ = std::move(out);
  return f;
}

PwlFunction make_pwl(std::vector<Breakpoint> points) {
  return make_pwl_on(std::move(points), Rational(0), Rational(1));
}

PwlFunction make_continuous(const std::vector<std::pair<Rational, Rational>>& points) {
  std::vector<Breakpoint> bps;
  bps.reserve(points.size());
  for (const auto& [x, y] : points) bps.push_back({x, std::nullopt, y, std::nullopt});
  return make_pwl(std::move(bps));
}

std::optional<std::size_t> PwlFunction::find_breakpoint(const Rational& x) const {
  auto it = std::lower_bound(bp_.begin(), bp_.end(), x,
                             [](const Breakpoint& b, const Rational& v) { return b.x < v; });
  if (it != bp_.end() && it->x == x) return static_cast<std::size_t>(it - bp_.begin());
  return std::nullopt;
}

std::size_t PwlFunction::piece_index(const Rational& x, Side side) const {
  auto it = std::lower_bound(bp_.begin(), bp_.end(), x,
                             [](const Breakpoint& b, const Rational& v) { return b.x < v; });
  std::size_t k = static_cast<std::size_t>(it - bp_.begin());
  std::size_t last = bp_.size() - 2;
  if (it != bp_.end() && it->x == x) {
    if (side == Side::kLeft) return k == 0 ? 0 : k - 1;
    return std::min(k, last);
  }
  if (k == 0) return 0;
  return std::min(k - 1, last);
}

Rational PwlFunction::piece_slope(std::size_t i) const {
  return (*bp_[i + 1].limit_left - *bp_[i].limit_right) / (bp_[i + 1].x - bp_[i].x);
}

Rational PwlFunction::piece_value(std::size_t i, const Rational& x) const {
  const auto& a = bp_[i];
  const auto& b = bp_[i + 1];
  if (x == a.x) return *a.limit_right;
  if (x == b.x) return *b.limit_left;
  return *a.limit_right + (*b.limit_left - *a.limit_right) * (x - a.x) / (b.x - a.x);
}

Rational PwlFunction::evaluate(const Rational& x) const {
  if (bp_.empty() || x < lo() || x > hi())
    throw Error(ErrorKind::kOutOfDomain, "x=" + x.str());
  if (auto k = find_breakpoint(x)) return bp_[*k].value;
  return piece_value(piece_index(x), x);
}

Rational PwlFunction::limit(const Rational& x, Side side) const {
  if (bp_.empty() || x < lo() || x > hi())
    throw Error(ErrorKind::kOutOfDomain, "x=" + x.str());
  if (side == Side::kLeft && x == lo())
    throw Error(ErrorKind::kSideUnavailable, "no left limit at " + x.str());
  if (side == Side::kRight && x == hi())
    throw Error(ErrorKind::kSideUnavailable, "no right limit at " + x.str());
  if (auto k = find_breakpoint(x)) {
    const auto& b = bp_[*k];
    if (side == Side::kLeft) return *b.limit_left;
    if (side == Side::kRight) return *b.limit_right;
    return b.value;
  }
  return piece_value(piece_index(x), x);
}

bool PwlFunction::is_continuous() const {
  for (const auto& b : bp_) {
    if (b.limit_left && *b.limit_left != b.value) return false;
    if (b.limit_right && *b.limit_right != b.value) return false;
  }
  return true;
}

std::vector<Rational> PwlFunction::xs() const {
  std::vector<Rational> r;
  r.reserve(bp_.size());
  for (const auto& b : bp_) r.push_back(b.x);
  return r;
}

Rational evaluate(const PwlFunction& f, const Rational& x) { return f.evaluate(x); }

Rational limit(const PwlFunction& f, const Rational& x, Side side) { return f.limit(x, side); }

Breakpoint sample(const PwlFunction& f, const Rational& x) {
  Breakpoint b{x, std::nullopt, f.evaluate(x), std::nullopt};
  if (x > f.lo()) b.limit_left = f.limit(x, Side::kLeft);
  if (x < f.hi()) b.limit_right = f.limit(x, Side::kRight);
  return b;
}

PwlFunction interpolate_discrete(const std::vector<Rational>& values, int q, const GridLimits* limits) {
  if (q < 1) throw Error(ErrorKind::kBadQ, "q must be positive");
  if (values.size() != static_cast<std::size_t>(q) + 1)
    throw Error(ErrorKind::kMissingGridPoint, "expected " + std::to_string(q + 1) + " grid values");
  if (limits && (limits->left.size() != values.size() || limits->right.size() != values.size()))
    throw Error(ErrorKind::kMissingGridPoint, "limit data does not cover the grid");
  std::vector<Breakpoint> bps;
  bps.reserve(values.size());
  for (int i = 0; i <= q; ++i) {
    Breakpoint b{Rational(i, q), std::nullopt, values[i], std::nullopt};
    if (limits) {
      if (i > 0) b.limit_left = limits->left[i];
      if (i < q) b.limit_right = limits->right[i];
    }
    bps.push_back(std::move(b));
  }
  return make_pwl(std::move(bps));
}

PwlFunction interpolate_discrete(const std::map<int, Rational>& values, int q, const GridLimits* limits) {
  if (q < 1) throw Error(ErrorKind::kBadQ, "q must be positive");
  std::vector<Rational> v;
  v.reserve(q + 1);
  for (int i = 0; i <= q; ++i) {
    auto it = values.find(i);
    if (it == values.end())
      throw Error(ErrorKind::kMissingGridPoint, "no value at " + std::to_string(i) + "/" + std::to_string(q));
    v.push_back(it->second);
  }
  return interpolate_discrete(v, q, limits);
}

PwlFunction linear_combination(const Rational& a, const PwlFunction& f1, const Rational& b,
                               const PwlFunction& f2) {
  if (f1.lo() != f2.lo() || f1.hi() != f2.hi())
    throw Error(ErrorKind::kOutOfDomain, "functions live on different domains");
  std::set<Rational> xs;
  for (const auto& p : f1.breakpoints()) xs.insert(p.x);
  for (const auto& p : f2.breakpoints()) xs.insert(p.x);
  std::vector<Breakpoint> bps;
  bps.reserve(xs.size());
  for (const auto& x : xs) {
    Breakpoint s1 = sample(f1, x), s2 = sample(f2, x);
    Breakpoint c{x, std::nullopt, a * s1.value + b * s2.value, std::nullopt};
    if (s1.limit_left) c.limit_left = a * *s1.limit_left + b * *s2.limit_left;
    if (s1.limit_right) c.limit_right = a * *s1.limit_right + b * *s2.limit_right;
    bps.push_back(std::move(c));
  }
  return make_pwl_on(std::move(bps), f1.lo(), f1.hi());
}

PwlFunction convex_combination(const PwlFunction& f1, const PwlFunction& f2, const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw Error(ErrorKind::kAlphaOutOfRange, "alpha=" + alpha.str());
  if (alpha == 1) return f1;
  if (alpha == 0) return f2;
  return linear_combination(alpha, f1, Rational(1) - alpha, f2);
}

PwlFunction compose(const PwlFunction& outer, const PwlFunction& inner) {
  if (!inner.is_continuous()) throw Error(ErrorKind::kInnerDiscontinuous, "inner function has a jump");
  for (const auto& p : inner.breakpoints()) {
    if (p.value < outer.lo() || p.value > outer.hi())
      throw Error(ErrorKind::kOutOfDomain, "inner value " + p.value.str() + " outside outer domain");
  }
  std::set<Rational> xs;
  const auto& ib = inner.breakpoints();
  for (const auto& p : ib) xs.insert(p.x);
  for (std::size_t i = 0; i + 1 < ib.size(); ++i) {
    Rational s = inner.piece_slope(i);
    if (s == 0) continue;
    for (const auto& ob : outer.breakpoints()) {
      Rational x = ib[i].x + (ob.x - ib[i].value) / s;
      if (x > ib[i].x && x < ib[i + 1].x) xs.insert(x);
    }
  }
  std::vector<Breakpoint> bps;
  bps.reserve(xs.size());
  for (const auto& x : xs) {
    Rational y = inner.evaluate(x);
    Breakpoint c{x, std::nullopt, outer.evaluate(y), std::nullopt};
    auto side_limit = [&](const Rational& slope, bool from_left) {
      int dir = slope.sign() * (from_left ? -1 : 1);
      if (dir < 0) return outer.limit(y, Side::kLeft);
      if (dir > 0) return outer.limit(y, Side::kRight);
      return outer.evaluate(y);
    };
    if (x > inner.lo()) c.limit_left = side_limit(inner.piece_slope(inner.piece_index(x, Side::kLeft)), true);
    if (x < inner.hi()) c.limit_right = side_limit(inner.piece_slope(inner.piece_index(x, Side::kRight)), false);
    bps.push_back(std::move(c));
  }
  return make_pwl_on(std::move(bps), inner.lo(), inner.hi());
}

Rational integrate(const PwlFunction& f, const Rational& a, const Rational& b) {
  if (!(a < b) || a < f.lo() || b > f.hi())
    throw Error(ErrorKind::kBadInterval, "[" + a.str() + "," + b.str() + "]");
  Rational total;
  const auto& bp = f.breakpoints();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    Rational u = max(a, bp[i].x), v = min(b, bp[i + 1].x);
    if (!(u < v)) continue;
    total += (v - u) * (f.piece_value(i, u) + f.piece_value(i, v)) / 2;
  }
  return total;
}

std::vector<Rational> distinct_slopes(const PwlFunction& f) {
  std::set<Rational> s;
  for (std::size_t i = 0; i < f.num_pieces(); ++i) s.insert(f.piece_slope(i));
  return {s.begin(), s.end()};
}

}  // namespace dff
