#include "dff/gjlink.hpp"

#include <algorithm>
#include <set>

#include "dff/error.hpp"

namespace dff {

namespace {

constexpr Side kSides[] = {Side::kLeft, Side::kAt, Side::kRight};

Side opposite(Side s) { return s == Side::kLeft ? Side::kRight : s == Side::kRight ? Side::kLeft : Side::kAt; }

std::string str(const Rational& x) { return x.str(); }

// psi -> alpha * x + beta * psi, keeping the representation class.
GdffFunction affine_transform(const GdffFunction& psi, const Rational& alpha, const Rational& beta) {
  const PwlFunction& c = psi.core();
  PwlFunction id = make_pwl_on({Breakpoint{c.lo(), std::nullopt, c.lo(), c.lo()},
                                Breakpoint{c.hi(), c.hi(), c.hi(), std::nullopt}},
                               c.lo(), c.hi());
  PwlFunction core = linear_combination(alpha, id, beta, c);
  if (const auto* t = std::get_if<AffineTails>(&psi.extension()))
    return GdffFunction(core, AffineTails{alpha + beta * t->left_slope, alpha * c.lo() + beta * t->left_anchor,
                                          alpha + beta * t->right_slope, alpha * c.hi() + beta * t->right_anchor});
  const auto& q = std::get<Quasiperiodic>(psi.extension());
  return GdffFunction(core, Quasiperiodic{q.period, alpha * q.period + beta * q.increment});
}

}  // namespace

GjFunction::GjFunction(PwlFunction p, Rational rhs) : period(std::move(p)), b(std::move(rhs)) {
  if (!period.on_unit_interval()) throw Error(ErrorKind::kNonCanonicalDomain, "period must be given on [0,1]");
  if (b.sign() <= 0 || b.is_integer()) throw Error(ErrorKind::kBadParameter, "b must be positive and not an integer");
}

Rational GjFunction::limit(const Rational& x, Side side) const {
  Rational r = x.frac();
  if (r.is_zero()) return side == Side::kLeft ? period.limit(Rational(1), Side::kLeft) : period.limit(r, side);
  return period.limit(r, side);
}

Rational GjFunction::evaluate(const Rational& x) const { return limit(x, Side::kAt); }

namespace {

// Vertices of the periodic complex in [0,1]^2: lines x, y in B and x + y in B or B + 1.
std::set<std::pair<Rational, Rational>> periodic_vertices(const GjFunction& pi) {
  std::vector<Rational> B = pi.period.xs();
  std::vector<Rational> sums = B;
  for (const auto& z : B) sums.push_back(z + 1);
  std::set<std::pair<Rational, Rational>> out;
  auto add = [&](const Rational& x, const Rational& y) {
    if (x >= 0 && x <= 1 && y >= 0 && y <= 1) out.emplace(x, y);
  };
  for (const auto& u : B) {
    for (const auto& v : B) add(u, v);
    for (const auto& z : sums) {
      add(u, z - u);
      add(z - u, u);
    }
  }
  return out;
}

}  // namespace

GjVerdict gj_minimality_test(const GjFunction& pi) {
  GjVerdict v;
  auto fail = [&](std::string s) {
    v.is_minimal = false;
    v.failures.push_back(std::move(s));
  };
  const PwlFunction& p = pi.period;
  if (!pi.evaluate(Rational(0)).is_zero()) fail("pi(0) != 0");
  if (p.evaluate(Rational(1)) != p.evaluate(Rational(0))) fail("pi(1) != pi(0)");
  for (const auto& bp : p.breakpoints()) {
    bool bad = bp.value.sign() < 0 || bp.value > 1;
    for (const auto& l : {bp.limit_left, bp.limit_right})
      if (l && (l->sign() < 0 || *l > 1)) bad = true;
    if (bad) fail("range violated at " + str(bp.x));
  }

  // symmetry pi(x) + pi(f - x) = 1 at every breakpoint of either term
  const Rational f = pi.f();
  std::set<Rational> pts;
  for (const auto& x : p.xs()) {
    pts.insert(x.frac());
    pts.insert((f - x).frac());
  }
  for (const auto& x : pts)
    for (Side s : kSides)
      if (pi.limit(x, s) + pi.limit(f - x, opposite(s)) != 1) {
        fail("symmetry violated at " + str(x));
        break;
      }

  // subadditivity with limits from every face around each vertex
  for (const auto& [x, y] : periodic_vertices(pi)) {
    bool bad = false;
    for (Side sx : kSides)
      for (Side sy : kSides) {
        std::vector<Side> sums;
        if (sx == sy || sy == Side::kAt) sums = {sx};
        else if (sx == Side::kAt) sums = {sy};
        else sums = {Side::kLeft, Side::kAt, Side::kRight};
        for (Side sz : sums)
          if (pi.limit(x, sx) + pi.limit(y, sy) < pi.limit(x + y, sz)) bad = true;
      }
    if (bad) fail("subadditivity violated at (" + str(x) + ", " + str(y) + ")");
  }
  return v;
}

std::vector<Point2> gj_additive_vertices(const GjFunction& pi) {
  std::vector<Point2> out;
  for (const auto& [x, y] : periodic_vertices(pi))
    if (pi.evaluate(x) + pi.evaluate(y) == pi.evaluate(x + y)) out.push_back(Point2{x, y});
  return out;
}

Rational max_slope(const PwlFunction& f) {
  auto s = distinct_slopes(f);
  if (s.empty()) throw Error(ErrorKind::kBadParameter, "function has no pieces");
  return s.back();
}

GjFunction gmic(const Rational& b) {
  Rational f = b.frac();
  if (f.is_zero()) throw Error(ErrorKind::kBadParameter, "b must not be an integer");
  return GjFunction(make_continuous({{Rational(0), Rational(0)}, {f, Rational(1)}, {Rational(1), Rational(0)}}), b);
}

GjFunction sawtooth_mix(const Rational& b, const Rational& w) {
  if (b.frac() != Rational(1, 2)) throw Error(ErrorKind::kBadParameter, "sawtooth variants need frac(b) = 1/2");
  if (w.sign() < 0 || w > 1) throw Error(ErrorKind::kAlphaOutOfRange, "weight must lie in [0,1]");
  std::vector<std::pair<Rational, Rational>> tri;
  for (int k = 0; k <= 6; ++k) tri.emplace_back(Rational(k, 6), Rational(k % 2));
  GjFunction pi(linear_combination(w, gmic(b).period, 1 - w, make_continuous(tri)), b);
  if (!gj_minimality_test(pi).is_minimal) throw Error(ErrorKind::kNotMinimal, "sawtooth variant is not minimal");
  return pi;
}

GdffFunction gj_to_gdff(const GjFunction& pi, const Rational& lambda) {
  const Rational s = max_slope(pi.period);
  if (lambda.sign() <= 0 || s.sign() <= 0 || lambda * s > 1 || lambda >= pi.b)
    throw Error(ErrorKind::kLambdaOutOfRange, "need 0 < lambda <= 1/s_max, got " + str(lambda));
  auto verdict = gj_minimality_test(pi);
  if (!verdict.is_minimal) throw Error(ErrorKind::kNotMinimal, verdict.failures.front());
  if (pi.limit(Rational(0), Side::kRight) != 0)
    throw Error(ErrorKind::kBadParameter, "pi must be right-continuous at 0");
  const Rational& b = pi.b;
  const Rational den = b - lambda;
  auto phi = [&](const Rational& t, const Rational& pv) { return (t - lambda * pv) / den; };
  std::vector<Breakpoint> bps;
  for (const auto& bp : pi.period.breakpoints()) {
    Breakpoint q{bp.x / b, std::nullopt, phi(bp.x, bp.x == 1 ? Rational(0) : bp.value), std::nullopt};
    if (bp.limit_left) q.limit_left = phi(bp.x, *bp.limit_left);
    if (bp.limit_right) q.limit_right = phi(bp.x, *bp.limit_right);
    bps.push_back(std::move(q));
  }
  return GdffFunction(make_pwl_on(std::move(bps), Rational(0), 1 / b), Quasiperiodic{1 / b, 1 / den});
}

PwlFunction restrict_to_unit(const GdffFunction& psi) { return restrict_to(psi, Rational(0), Rational(1)); }

GdffFunction extend_to_gdff(const PwlFunction& phi, const Rational& b, ExtensionMode mode) {
  if (!phi.on_unit_interval()) throw Error(ErrorKind::kNonCanonicalDomain, "phi must live on [0,1]");
  if (b < 1) throw Error(ErrorKind::kBadParameter, "b must be at least 1");
  if (mode == ExtensionMode::kAffine) return GdffFunction(phi, AffineTails{b, 1 - b, b, b});
  // b*floor(x) + phi(frac x): the value at 1 is b, the left limit there stays phi(1-)
  std::vector<Breakpoint> bps = phi.breakpoints();
  bps.back().value = b;
  return GdffFunction(make_pwl(std::move(bps)), Quasiperiodic{Rational(1), b});
}

GdffFunction dff_to_yc(const GdffFunction& psi, const Rational& lambda) {
  if (lambda.sign() <= 0 || lambda >= 1) throw Error(ErrorKind::kLambdaOutOfRange, "need 0 < lambda < 1");
  return affine_transform(psi, 1 / lambda, -(1 - lambda) / lambda);
}

GdffFunction yc_to_dff(const GdffFunction& pi, const Rational& lambda) {
  if (lambda.sign() <= 0 || lambda >= 1) throw Error(ErrorKind::kLambdaOutOfRange, "need 0 < lambda < 1");
  return affine_transform(pi, 1 / (1 - lambda), -lambda / (1 - lambda));
}

std::pair<std::vector<Rational>, Rational> generate_cut(const GdffFunction& psi, const std::vector<Rational>& coeffs,
                                                        const Rational& rhs) {
  std::vector<Rational> out;
  out.reserve(coeffs.size());
  for (const auto& a : coeffs) out.push_back(psi.evaluate(a));
  return {std::move(out), psi.evaluate(rhs)};
}

Rational lueker_bound(const PwlFunction& phi, const Rational& a, const Rational& b) {
  if (a.sign() <= 0 || a >= b || b >= 1) throw Error(ErrorKind::kBadInterval, "need 0 < a < b < 1");
  return integrate(phi, a, b) / ((b * b - a * a) / 2);
}

}  // namespace dff
