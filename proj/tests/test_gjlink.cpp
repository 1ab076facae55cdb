#include <gtest/gtest.h>

#include <random>

#include "dff/compendium.hpp"
#include "dff/error.hpp"
#include "dff/extremality.hpp"
#include "dff/gjlink.hpp"
#include "dff/maximality.hpp"
#include "oracles.hpp"

using namespace dff;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

Rational random_rational(std::mt19937& rng, long long lo, long long hi, long long den) {
  std::uniform_int_distribution<long long> d(lo * den, hi * den);
  return Rational(d(rng), den);
}

// Trapezoid sum on a grid of step 1/n; exact when every breakpoint lies on the grid.
template <typename Fn>
Rational trapezoid(Fn&& f, const Rational& a, const Rational& b, long long n) {
  Rational s;
  Rational h(1, n);
  for (Rational x = a; x < b; x += h) s += (f(x) + f(x + h)) * h / 2;
  return s;
}

// Conversions checked below: sawtooth pi, lambda = 1/s_max.
GdffFunction convert(const GjFunction& pi) { return gj_to_gdff(pi, 1 / max_slope(pi.period)); }

const Rational kHalfIntegers[] = {R(5, 2), R(7, 2), R(9, 2), R(11, 2)};

}  // namespace

TEST(GjLink, SawtoothIsMinimal) {
  for (const auto& b : kHalfIntegers) EXPECT_TRUE(gj_minimality_test(gmic(b)).is_minimal);
  EXPECT_TRUE(gj_minimality_test(gmic(R(7, 3))).is_minimal);
}

TEST(GjLink, NonMinimalFunctionsRejected) {
  GjFunction zero(make_continuous({{R(0), R(0)}, {R(1), R(0)}}), R(1, 2));
  auto v = gj_minimality_test(zero);
  EXPECT_FALSE(v.is_minimal);
  // a tent steeper than the sawtooth breaks subadditivity
  GjFunction steep(make_continuous({{R(0), R(0)}, {R(1, 4), R(1)}, {R(1, 2), R(1)}, {R(3, 4), R(1)}, {R(1), R(0)}}),
                   R(1, 2));
  EXPECT_FALSE(gj_minimality_test(steep).is_minimal);
  EXPECT_THROW(GjFunction(make_continuous({{R(0), R(0)}, {R(1), R(1)}}), R(2)), Error);
}

TEST(GjLink, SlopeFamiliesAreMinimal) {
  GjFunction three = sawtooth_mix(R(7, 2), R(3, 4));
  GjFunction four = sawtooth_mix(R(7, 2), R(1, 2));
  EXPECT_EQ(distinct_slopes(gmic(R(7, 2)).period).size(), 2u);
  EXPECT_EQ(distinct_slopes(three.period).size(), 3u);
  EXPECT_EQ(distinct_slopes(four.period).size(), 4u);
  EXPECT_EQ(max_slope(three.period), R(3));
  EXPECT_EQ(max_slope(four.period), R(4));
  EXPECT_THROW(sawtooth_mix(R(7, 3), R(1, 2)), Error);
}

TEST(GjLink, SpecExampleSevenHalves) {
  GdffFunction psi = gj_to_gdff(gmic(R(7, 2)), R(1, 2));
  const auto& q = std::get<Quasiperiodic>(psi.extension());
  EXPECT_EQ(q.period, R(2, 7));
  EXPECT_EQ(q.increment, R(1, 3));
  // hand evaluation: 0 on [0,1/7], (7x-1)/3 on [1/7,2/7]
  for (int k = 0; k <= 40; ++k) {
    Rational x = R(k, 280);
    EXPECT_EQ(psi.evaluate(x), Rational(0)) << x.str();
    Rational y = R(1, 7) + x;
    EXPECT_EQ(psi.evaluate(y), (7 * y - 1) / 3) << y.str();
  }
  EXPECT_EQ(psi.evaluate(R(1)), R(1));
  PwlFunction phi = restrict_to_unit(psi);
  std::vector<Rational> slopes{R(0), R(7, 3)};
  EXPECT_EQ(distinct_slopes(phi), slopes);
  for (const auto& x : phi.xs()) EXPECT_TRUE((7 * x).is_integer()) << x.str();
}

TEST(GjLink, LambdaRange) {
  GjFunction pi = gmic(R(7, 2));
  EXPECT_THROW(gj_to_gdff(pi, R(0)), Error);
  EXPECT_THROW(gj_to_gdff(pi, R(3, 5)), Error);
  EXPECT_NO_THROW(gj_to_gdff(pi, R(1, 2)));
  EXPECT_NO_THROW(gj_to_gdff(pi, R(1, 5)));
  try {
    gj_to_gdff(pi, R(-1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLambdaOutOfRange);
  }
  GjFunction zero(make_continuous({{R(0), R(0)}, {R(1, 2), R(1, 2)}, {R(1), R(0)}}), R(1, 2));
  try {
    gj_to_gdff(zero, R(1, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotMinimal);
  }
}

TEST(GjLink, ConversionSuite) {
  std::vector<GjFunction> family;
  for (const auto& b : kHalfIntegers) {
    family.push_back(gmic(b));
    family.push_back(sawtooth_mix(b, R(3, 4)));
    family.push_back(sawtooth_mix(b, R(1, 2)));
  }
  for (const auto& pi : family) {
    const Rational& b = pi.b;
    Rational lambda = 1 / max_slope(pi.period);
    GdffFunction psi = gj_to_gdff(pi, lambda);
    SCOPED_TRACE("b=" + b.str() + " slopes=" + std::to_string(distinct_slopes(pi.period).size()));
    EXPECT_EQ(psi.evaluate(R(0)), R(0));
    for (int k = -60; k <= 60; ++k) {
      Rational x = R(k, 37);
      EXPECT_EQ(psi.evaluate(x) + psi.evaluate(1 - x), R(1)) << x.str();
      EXPECT_EQ(psi.evaluate(x + 1 / b), psi.evaluate(x) + 1 / (b - lambda)) << x.str();
      // closed formula, evaluated through the periodic pi
      EXPECT_EQ(psi.evaluate(x), (b * x - lambda * pi.evaluate(b * x)) / (b - lambda)) << x.str();
    }
    EXPECT_TRUE(gdff_maximality_sufficient(psi).is_maximal);
    PwlFunction phi = restrict_to_unit(psi);
    EXPECT_TRUE(maximality_test(phi).is_maximal);
    EXPECT_EQ(distinct_slopes(phi).size(), distinct_slopes(pi.period).size());
    // every additive vertex of pi scales to an additive vertex of psi
    auto verts = gj_additive_vertices(pi);
    EXPECT_FALSE(verts.empty());
    for (const auto& [x, y] : verts) EXPECT_EQ(psi.evaluate(x / b) + psi.evaluate(y / b), psi.evaluate((x + y) / b));
  }
}

TEST(GjLink, TwoSlopeRestrictionsExtremeAboveThree) {
  for (const auto& b : kHalfIntegers) {
    if (b < 3) continue;
    PwlFunction phi = restrict_to_unit(convert(gmic(b)));
    EXPECT_EQ(extremality_test(phi).status, ExtremalityStatus::kExtreme) << b.str();
  }
}

TEST(GjLink, ExtendToGdff) {
  GdffFunction id = extend_to_gdff(identity(), R(1), ExtensionMode::kAffine);
  for (int k = -10; k <= 10; ++k) EXPECT_EQ(id.evaluate(R(k, 3)), R(k, 3));
  EXPECT_TRUE(gdff_maximality_sufficient(id).is_maximal);
  GdffFunction idq = extend_to_gdff(identity(), R(1), ExtensionMode::kQuasiperiodic);
  for (int k = -10; k <= 10; ++k) EXPECT_EQ(idq.evaluate(R(k, 3)), R(k, 3));
  EXPECT_TRUE(gdff_maximality_sufficient(idq).is_maximal);

  PwlFunction bj = phi_bj_1(R(3, 2));
  GdffFunction good = extend_to_gdff(bj, R(3), ExtensionMode::kAffine);
  EXPECT_EQ(good.evaluate(R(-1)), R(-5));
  EXPECT_EQ(good.evaluate(R(2)), R(6));
  EXPECT_TRUE(gdff_maximality_sufficient(good).is_maximal);
  auto bad = gdff_maximality_sufficient(extend_to_gdff(bj, R(1), ExtensionMode::kAffine));
  EXPECT_FALSE(bad.is_maximal);
  bool has_superadditivity = false;
  for (const auto& v : bad.violations) has_superadditivity |= v.kind == ViolationKind::kSuperadditivity;
  EXPECT_TRUE(has_superadditivity);
  // b*floor(x) + phi(frac x) is not symmetric at 0 and 1 once b > 1
  GdffFunction q = extend_to_gdff(bj, R(3), ExtensionMode::kQuasiperiodic);
  EXPECT_EQ(q.evaluate(R(1)), R(3));
  EXPECT_EQ(q.evaluate(R(5, 4)), R(3) + bj.evaluate(R(1, 4)));
  EXPECT_FALSE(gdff_maximality_sufficient(q).is_maximal);
}

TEST(GjLink, YildizCornuejolsConversion) {
  GdffFunction id = extend_to_gdff(identity(), R(1), ExtensionMode::kAffine);
  for (const auto& lambda : {R(1, 3), R(1, 2), R(9, 10)}) {
    GdffFunction pi = dff_to_yc(id, lambda);
    for (int k = -9; k <= 9; ++k) EXPECT_EQ(pi.evaluate(R(k, 4)), R(k, 4));
  }
  EXPECT_THROW(dff_to_yc(id, R(1)), Error);
  EXPECT_THROW(yc_to_dff(id, R(0)), Error);

  // sum r y(r) = 1 with y >= 0 integer: a gDFF gives sum psi(r) y(r) <= 1, its image sum pi(r) y(r) >= 1
  GdffFunction psi = convert(gmic(R(7, 2)));
  GdffFunction pi = dff_to_yc(psi, R(1, 3));
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> count(1, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<Rational, int>> ms;
    Rational sum;
    for (int i = 0; i < 3; ++i) {
      Rational r = random_rational(rng, -2, 2, 24);
      int y = count(rng);
      ms.emplace_back(r, y);
      sum += r * y;
    }
    int y_last = count(rng);
    ms.emplace_back((1 - sum) / y_last, y_last);
    Rational lhs_psi, lhs_pi;
    for (const auto& [r, y] : ms) {
      lhs_psi += psi.evaluate(r) * y;
      lhs_pi += pi.evaluate(r) * y;
    }
    EXPECT_LE(lhs_psi, R(1));
    EXPECT_GE(lhs_pi, R(1));
  }

  // the converse fails: 5x for x >= 0, x for x < 0 except -4 at -1
  PwlFunction core = make_pwl_on({Breakpoint{R(-1), std::nullopt, R(-4), R(-1)}, Breakpoint{R(0), R(0), R(0), std::nullopt}},
                                 R(-1), R(0));
  GdffFunction example(core, AffineTails{R(1), R(-1), R(5), R(0)});
  EXPECT_EQ(example.evaluate(R(-2)), R(-2));
  EXPECT_EQ(example.evaluate(R(1)), R(5));
  GdffFunction back = yc_to_dff(example, R(1, 2));
  EXPECT_EQ(back.evaluate(R(-1)), R(2));
}

TEST(GjLink, GenerateCut) {
  GdffFunction id = extend_to_gdff(identity(), R(1), ExtensionMode::kAffine);
  std::vector<Rational> row{R(1, 3), R(2, 5), R(1, 7)};
  auto [c, r] = generate_cut(id, row, R(1));
  EXPECT_EQ(c, row);
  EXPECT_EQ(r, R(1));

  GdffFunction psi = gj_to_gdff(gmic(R(7, 2)), R(1, 2));
  auto [c2, r2] = generate_cut(psi, {R(1, 7), R(3, 7), R(1)}, R(1));
  // psi(3/7) = psi(1/7) + 1/3 by one period shift
  std::vector<Rational> expected{R(0), R(1, 3), R(1)};
  EXPECT_EQ(c2, expected);
  EXPECT_EQ(r2, R(1));

  // every integer point of a knapsack row satisfies the generated cut
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> xs(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> a;
    std::vector<int> x;
    Rational lhs;
    for (int j = 0; j < 4; ++j) {
      a.push_back(random_rational(rng, 0, 1, 30));
      x.push_back(xs(rng));
      lhs += a.back() * x.back();
    }
    Rational rhs = lhs + random_rational(rng, 0, 1, 30);
    auto [cut, cut_rhs] = generate_cut(psi, a, rhs);
    Rational v;
    for (std::size_t j = 0; j < a.size(); ++j) v += cut[j] * x[j];
    EXPECT_LE(v, cut_rhs);
  }
}

TEST(GjLink, LuekerBound) {
  EXPECT_EQ(lueker_bound(identity(), R(1, 5), R(4, 5)), R(1));
  PwlFunction bj = phi_bj_1(R(3, 2));
  EXPECT_EQ(lueker_bound(bj, R(1, 3), R(2, 3)), R(1));
  Rational a = R(2, 3), b = R(9, 10);
  auto f = [](const Rational& x) { return oracle::bj_formula(R(3, 2), x); };
  Rational expected = trapezoid(f, a, b, 90) / ((b * b - a * a) / 2);
  EXPECT_EQ(expected, R(60, 47));
  EXPECT_EQ(lueker_bound(bj, a, b), expected);
  try {
    lueker_bound(bj, R(1, 2), R(1, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadInterval);
  }
  EXPECT_THROW(lueker_bound(bj, R(0), R(1, 2)), Error);
  EXPECT_THROW(lueker_bound(bj, R(1, 2), R(1)), Error);
}
