#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dff/compendium.hpp"
#include "dff/error.hpp"
#include "dff/maximality.hpp"
#include "dff/search.hpp"
#include "oracles.hpp"

using namespace dff;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

RationalRow cont(std::vector<Rational> v) { return v; }

template <typename Fn>
void expect_error(ErrorKind k, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), k) << e.what();
  }
}

Rational dot(const RationalRow& a, const RationalRow& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST(BuildPolytope, SmallCases) {
  expect_error(ErrorKind::kBadQ, [] { build_polytope(1, SearchMode::kContinuous); });
  HRep h2 = build_polytope(2, SearchMode::kContinuous);
  EXPECT_EQ(eliminate_equalities(h2).reduced.num_vars, 0u);
  EXPECT_EQ(enumerate_vertices(h2), (std::vector<RationalRow>{cont({R(0), R(1, 2), R(1)})}));

  // q = 3: 0 <= a_1 <= 1/3
  HRep h3 = build_polytope(3, SearchMode::kContinuous);
  AffineReduction r3 = eliminate_equalities(h3);
  EXPECT_EQ(r3.reduced.num_vars, 1u);
  EXPECT_EQ(r3.free_vars, (std::vector<std::size_t>{1}));
  HRep m3 = minimize_hrep(h3);
  EXPECT_EQ(m3.inequalities.size(), 2u);
  EXPECT_EQ(enumerate_vertices(h3),
            (std::vector<RationalRow>{cont({R(0), R(0), R(1), R(1)}), cont({R(0), R(1, 3), R(2, 3), R(1)})}));
}

TEST(BuildPolytope, QFiveHandReduction) {
  HRep h = build_polytope(5, SearchMode::kContinuous);
  HRep m = minimize_hrep(h);
  EXPECT_EQ(m.inequalities.size(), 3u);
  // the irredundant set is {a1 >= 0, 2 a1 <= a2, a1 + 2 a2 <= 1} up to scaling
  AffineReduction red = eliminate_equalities(m);
  std::set<std::pair<RationalRow, Rational>> got;
  for (const auto& c : red.reduced.inequalities) got.emplace(c.row, c.rhs);
  std::set<std::pair<RationalRow, Rational>> want{{{R(-1), R(0)}, R(0)}, {{R(2), R(-1)}, R(0)}, {{R(1), R(2)}, R(1)}};
  EXPECT_EQ(got, want);
  auto v = enumerate_vertices(h);
  ASSERT_EQ(v.size(), 3u);
  std::vector<std::pair<Rational, Rational>> a12;
  for (const auto& x : v) a12.emplace_back(x[1], x[2]);
  EXPECT_EQ(a12, (std::vector<std::pair<Rational, Rational>>{{R(0), R(0)}, {R(0), R(1, 2)}, {R(1, 5), R(2, 5)}}));
}

TEST(MinimizeHrep, Idempotent) {
  for (int q : {5, 8, 11}) {
    HRep m = minimize_hrep(build_polytope(q, SearchMode::kContinuous));
    HRep mm = minimize_hrep(m);
    EXPECT_EQ(mm.inequalities.size(), m.inequalities.size());
  }
}

TEST(LpMaximize, SmallPrograms) {
  std::vector<Constraint> box{{{R(1), R(0)}, R(1), ""}, {{R(0), R(1)}, R(2), ""}, {{R(-1), R(-1)}, R(-1), ""}};
  auto r = lp_maximize(box, {R(1), R(1)}, 2);
  ASSERT_EQ(r.status, LpResult::kOptimal);
  EXPECT_EQ(r.value, R(3));
  EXPECT_EQ(r.x, (RationalRow{R(1), R(2)}));
  auto lo = lp_maximize(box, {R(-1), R(-2)}, 2);
  ASSERT_EQ(lo.status, LpResult::kOptimal);
  EXPECT_EQ(lo.value, R(-1));
  std::vector<Constraint> empty{{{R(1)}, R(0), ""}, {{R(-1)}, R(-1), ""}};
  EXPECT_EQ(lp_maximize(empty, {R(1)}, 1).status, LpResult::kInfeasible);
  std::vector<Constraint> ray{{{R(-1)}, R(0), ""}};
  EXPECT_EQ(lp_maximize(ray, {R(1)}, 1).status, LpResult::kUnbounded);
}

TEST(EnumerateVertices, TableCounts) {
  std::vector<std::pair<int, std::size_t>> table{{2, 1}, {3, 2}, {5, 3}, {7, 5}, {9, 9}, {11, 14}, {13, 25}};
  for (auto [q, n] : table) EXPECT_EQ(enumerate_vertices(build_polytope(q, SearchMode::kContinuous)).size(), n) << q;
}

TEST(EnumerateVertices, MatchesBruteForceTightSets) {
  for (int q = 2; q <= 7; ++q) {
    HRep h = build_polytope(q, SearchMode::kContinuous);
    EXPECT_EQ(enumerate_vertices(h), enumerate_vertices_brute(h)) << q;
  }
  for (int q = 2; q <= 3; ++q) {
    HRep h = build_polytope(q, SearchMode::kDiscontinuous);
    EXPECT_EQ(enumerate_vertices(h), enumerate_vertices_brute(h)) << q;
  }
}

TEST(EnumerateVertices, VertexCertificates) {
  for (auto mode : {SearchMode::kContinuous, SearchMode::kDiscontinuous}) {
    int qmax = mode == SearchMode::kContinuous ? 12 : 5;
    for (int q = 2; q <= qmax; ++q) {
      HRep h = build_polytope(q, mode);
      AffineReduction red = eliminate_equalities(h);
      for (const auto& v : enumerate_vertices(h)) {
        for (const auto& e : h.equalities) EXPECT_EQ(dot(e.row, v), e.rhs);
        std::vector<RationalRow> tight;
        for (const auto& c : h.inequalities) {
          Rational lhs = dot(c.row, v);
          EXPECT_LE(lhs, c.rhs);
          if (lhs == c.rhs) tight.push_back(c.row);
        }
        for (const auto& e : h.equalities) tight.push_back(e.row);
        EXPECT_EQ(rank_of(tight, h.num_vars), h.num_vars) << q;
      }
    }
  }
}

TEST(EnumerateVertices, InvariantUnderOrderAndMinimization) {
  std::mt19937 rng(41);
  for (int q : {7, 10, 11}) {
    HRep h = build_polytope(q, SearchMode::kContinuous);
    auto base = enumerate_vertices(h);
    HRep shuffled = h;
    std::shuffle(shuffled.inequalities.begin(), shuffled.inequalities.end(), rng);
    EXPECT_EQ(enumerate_vertices(shuffled), base);
    EXPECT_EQ(enumerate_vertices(minimize_hrep(h)), base);
  }
}

TEST(EnumerateVertices, IdentityAlwaysPresent) {
  for (int q = 2; q <= 14; ++q) {
    RationalRow id;
    for (int i = 0; i <= q; ++i) id.push_back(Rational(i, q));
    auto v = enumerate_vertices(build_polytope(q, SearchMode::kContinuous));
    EXPECT_TRUE(std::binary_search(v.begin(), v.end(), id)) << q;
  }
}

TEST(EnumerateVertices, InterpolatedVerticesAreMaximal) {
  for (auto mode : {SearchMode::kContinuous, SearchMode::kDiscontinuous}) {
    int qmax = mode == SearchMode::kContinuous ? 11 : 5;
    for (int q = 2; q <= qmax; ++q)
      for (const auto& v : enumerate_vertices(build_polytope(q, mode))) {
        PwlFunction f = DiscreteFunction{q, mode, v}.interpolate();
        EXPECT_TRUE(maximality_test(f).is_maximal);
        EXPECT_TRUE(oracle::superadditive_on_grid(f, 2 * q));
      }
  }
}

TEST(SearchExtreme, TableRows) {
  SearchOptions opt;
  opt.minimize = false;
  auto r5 = search_extreme(5, opt);
  EXPECT_EQ(r5.dim, 2u);
  EXPECT_EQ(r5.n_vertices, 3u);
  EXPECT_EQ(r5.n_extreme, 2u);
  EXPECT_EQ(r5.n_inconclusive, 0u);
  auto r11 = search_extreme(11, opt);
  EXPECT_EQ(r11.dim, 5u);
  EXPECT_EQ(r11.n_vertices, 14u);
  EXPECT_EQ(r11.n_extreme, 7u);
  EXPECT_EQ(r11.n_inconclusive, 0u);
}

TEST(SearchExtreme, ThreadCountDoesNotChangeResult) {
  SearchOptions one, four;
  one.minimize = four.minimize = false;
  four.threads = 4;
  auto a = search_extreme(13, one), b = search_extreme(13, four);
  ASSERT_EQ(a.verdicts.size(), b.verdicts.size());
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) EXPECT_EQ(a.verdicts[i].status, b.verdicts[i].status);
  EXPECT_EQ(a.n_extreme, b.n_extreme);
}

TEST(SearchExtreme, DiscontinuousSmall) {
  SearchOptions opt;
  opt.mode = SearchMode::kDiscontinuous;
  auto r = search_extreme(2, opt);
  EXPECT_EQ(r.n_vertices, 2u);
  EXPECT_EQ(r.n_extreme, 2u);
  auto r4 = search_extreme(4, opt);
  EXPECT_EQ(r4.n_inconclusive, 0u);
}
