#include "dff/extremality.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "dff/error.hpp"
#include "dff/maximality.hpp"

namespace dff {

namespace {

constexpr long kMaxGridCells = 4096;

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

// Cover and move closure of f on the grid of cells [i/Q, (i+1)/Q].
struct GridAnalysis {
  long Q = 0;
  std::vector<bool> covered;
  std::vector<std::size_t> cls;          // class representative per cell
  std::set<std::size_t> covered_classes;  // classes containing a covered cell
};

std::optional<long> common_denominator(const PwlFunction& f) {
  long q = 1;
  for (const auto& b : f.breakpoints()) {
    if (!b.x.is_small()) return std::nullopt;
    long d = static_cast<long>(b.x.small_den());
    q = std::lcm(q, d);
    if (q > kMaxGridCells) return std::nullopt;
  }
  return q;
}

long grid_index(const Rational& x, long Q) {
  Rational t = x * Rational(Q);
  return static_cast<long>(t.small_num());
}

std::optional<GridAnalysis> analyze_grid(const PwlFunction& f) {
  auto q = common_denominator(f);
  if (!q) return std::nullopt;
  GridAnalysis g;
  g.Q = *q;
  std::size_t n = static_cast<std::size_t>(g.Q);
  g.covered.assign(n, false);
  UnionFind uf(n);
  for (const auto& F : additive_2d_faces(f)) {
    long lo[3], hi[3];
    bool first = true;
    for (const auto& [x, y] : F.vertices) {
      long v[3] = {grid_index(x, g.Q), grid_index(y, g.Q), grid_index(x + y, g.Q)};
      for (int t = 0; t < 3; ++t) {
        if (first || v[t] < lo[t]) lo[t] = v[t];
        if (first || v[t] > hi[t]) hi[t] = v[t];
      }
      first = false;
    }
    long anchor = lo[0];
    for (int t = 0; t < 3; ++t) {
      for (long i = lo[t]; i < hi[t]; ++i) {
        g.covered[i] = true;
        uf.unite(static_cast<std::size_t>(anchor), static_cast<std::size_t>(i));
      }
    }
  }
  Complex2D cx = build_complex(f);
  for (std::size_t k = 0; k < cx.faces.size(); ++k) {
    const Face& F = cx.faces[k];
    if (F.dim != 1 || !cx.additive[k]) continue;
    const auto& a = F.vertices[0];
    const auto& b = F.vertices[1];
    if (F.J.is_point() || F.I.is_point()) {
      // translation by the fixed coordinate
      bool horiz = F.J.is_point();
      long shift = grid_index(horiz ? F.J.lo : F.I.lo, g.Q);
      if (shift == 0) continue;
      long s0 = grid_index(horiz ? a.first : a.second, g.Q), s1 = grid_index(horiz ? b.first : b.second, g.Q);
      for (long i = s0; i < s1; ++i) uf.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(i + shift));
    } else {
      // reflection about the fixed sum
      long c = grid_index(F.K.lo, g.Q);
      long s0 = grid_index(a.first, g.Q), s1 = grid_index(b.first, g.Q);
      for (long i = s0; i < s1; ++i) uf.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(c - 1 - i));
    }
  }
  g.cls.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.cls[i] = uf.find(i);
    if (g.covered[i]) g.covered_classes.insert(g.cls[i]);
  }
  return g;
}

std::vector<Rational> jump_points_of(const PwlFunction& f) {
  std::vector<Rational> out;
  for (const auto& b : f.breakpoints()) {
    bool jump = (b.limit_left && *b.limit_left != b.value) || (b.limit_right && *b.limit_right != b.value);
    if (jump && b.x.sign() > 0 && b.x < 1) out.push_back(b.x);
  }
  return out;
}

std::vector<Rational> merged(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::set<Rational> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  return {s.begin(), s.end()};
}

bool is_zero_function(const PwlFunction& f) {
  for (const auto& b : f.breakpoints()) {
    if (!b.value.is_zero()) return false;
    if (b.limit_left && !b.limit_left->is_zero()) return false;
    if (b.limit_right && !b.limit_right->is_zero()) return false;
  }
  return true;
}

PwlFunction identity_fn() { return make_continuous({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}); }

PwlFunction bump_on_cells(const std::vector<long>& cells, long Q) {
  std::set<long> in(cells.begin(), cells.end());
  std::vector<Breakpoint> bps;
  Rational q4(4 * Q);
  for (long i = 0; i <= Q; ++i) {
    bps.push_back({Rational(i, Q), std::nullopt, Rational(0), std::nullopt});
    if (i < Q && in.count(i)) {
      bps.push_back({Rational(4 * i + 1) / q4, std::nullopt, Rational(1), std::nullopt});
      bps.push_back({Rational(4 * i + 2) / q4, std::nullopt, Rational(0), std::nullopt});
      bps.push_back({Rational(4 * i + 3) / q4, std::nullopt, Rational(-1), std::nullopt});
    }
  }
  return make_pwl(std::move(bps));
}

PerturbationSpace space_from_classes(const PwlFunction& f, const GridAnalysis& g) {
  PerturbationSpace sp;
  std::map<std::size_t, std::size_t> var_of;
  for (long i = 0; i < g.Q; ++i) {
    std::size_t c = g.cls[i];
    auto [it, fresh] = var_of.emplace(c, var_of.size());
    if (!sp.pieces.empty() && sp.piece_var.back() == it->second) {
      sp.pieces.back().hi = Rational(i + 1, g.Q);
    } else {
      sp.pieces.push_back({Rational(i, g.Q), Rational(i + 1, g.Q)});
      sp.piece_var.push_back(it->second);
    }
  }
  sp.num_slope_vars = var_of.size();
  sp.jump_points = jump_points_of(f);
  return sp;
}

std::optional<Perturbation> checked(const PwlFunction& f, PwlFunction tilde) {
  Rational eps = epsilon_for(f, tilde);
  Perturbation p{std::move(tilde), eps};
  if (verify_perturbation(f, p)) return p;
  return std::nullopt;
}

ExtremalityVerdict solve_system(const PwlFunction& f, const PerturbationSpace& sp, ExtremalityVerdict v) {
  auto& d = v.diagnostics;
  d.used_system = true;
  d.slope_vars = sp.num_slope_vars;
  d.jump_vars = sp.num_jump_vars();
  std::vector<Rational> bhat = merged(f.xs(), sp.breakpoints());
  std::size_t nv = sp.num_vars();
  RowEchelon ech(nv);
  std::vector<RationalRow> rows = additivity_rows(f, sp, bhat, &d.additive_vertices);
  rows.push_back(sp.row(Rational(1), Side::kAt));
  const Rational& x1 = f.breakpoints()[1].x;
  if (f.limit(x1, Side::kLeft).is_zero()) rows.push_back(sp.row(x1, Side::kLeft));
  d.system_rows = rows.size();
  for (auto& r : rows) {
    ech.add(std::move(r));
    if (ech.rank() == nv) break;
  }
  d.system_rank = ech.rank();
  d.nullity = ech.nullity();
  if (d.nullity == 0) {
    v.status = ExtremalityStatus::kExtreme;
    v.reason = "perturbation system has only the trivial solution";
    return v;
  }
  RationalRow vec = integer_primitive(ech.nullspace().front());
  PwlFunction tilde = sp.reconstruct(vec);
  if (is_zero_function(tilde)) {
    v.status = ExtremalityStatus::kInconclusive;
    v.reason = "nullspace vector gives the zero function";
    return v;
  }
  if (auto p = checked(f, std::move(tilde))) {
    v.status = ExtremalityStatus::kNotExtreme;
    v.witness = std::move(p);
    v.reason = "nontrivial solution of the perturbation system";
  } else {
    v.status = ExtremalityStatus::kInconclusive;
    v.reason = "perturbation system solution failed verification";
  }
  return v;
}

}  // namespace

const char* to_string(ExtremalityStatus s) noexcept {
  switch (s) {
    case ExtremalityStatus::kExtreme: return "Extreme";
    case ExtremalityStatus::kNotExtreme: return "NotExtreme";
    case ExtremalityStatus::kInconclusive: return "Inconclusive";
  }
  return "Unknown";
}

RationalRow PerturbationSpace::row(const Rational& x, Side side) const {
  RationalRow r(num_vars());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (!(p.lo < x)) break;
    r[piece_var[i]] += min(p.hi, x) - p.lo;
  }
  std::size_t k = num_slope_vars, m = jump_points.size();
  for (std::size_t j = 0; j < m; ++j) {
    const Rational& a = jump_points[j];
    if (a < x || (a == x && side == Side::kRight)) r[k + j] += 1;
    else if (a == x && side == Side::kAt) r[k + m + j] += 1;
  }
  return r;
}

std::vector<Rational> PerturbationSpace::breakpoints() const {
  std::set<Rational> s(jump_points.begin(), jump_points.end());
  for (const auto& p : pieces) {
    s.insert(p.lo);
    s.insert(p.hi);
  }
  return {s.begin(), s.end()};
}

PwlFunction PerturbationSpace::reconstruct(const RationalRow& c) const {
  auto dot = [&](const RationalRow& r) {
    Rational s;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (!r[i].is_zero() && !c[i].is_zero()) s += r[i] * c[i];
    return s;
  };
  std::vector<Breakpoint> bps;
  for (const auto& x : breakpoints()) {
    Breakpoint b{x, std::nullopt, dot(row(x, Side::kAt)), std::nullopt};
    if (x.sign() > 0) b.limit_left = dot(row(x, Side::kLeft));
    if (x < 1) b.limit_right = dot(row(x, Side::kRight));
    bps.push_back(std::move(b));
  }
  return make_pwl(std::move(bps));
}

std::vector<RationalRow> additivity_rows(const PwlFunction& f, const PerturbationSpace& sp,
                                         const std::vector<Rational>& bhat, std::size_t* count) {
  bool continuous = f.is_continuous() && sp.jump_points.empty();
  std::vector<RationalRow> rows;
  std::size_t n = 0;
  for (const auto& [x, y] : complex_vertices(bhat)) {
    if (y < x) continue;
    for (const auto& p : all_patterns()) {
      if (continuous && p != LimitPattern{}) continue;
      if (!pattern_valid_at(p, x, y)) continue;
      if (!nabla_pattern(f, x, y, p).is_zero()) continue;
      ++n;
      RationalRow r = sp.row(x + y, side_of(p.dz));
      RationalRow a = sp.row(x, side_of(p.dx)), b = sp.row(y, side_of(p.dy));
      bool nonzero = false;
      for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= a[i] + b[i];
        nonzero = nonzero || !r[i].is_zero();
      }
      if (nonzero) rows.push_back(std::move(r));
    }
  }
  if (count) *count = n;
  return rows;
}

PerturbationSpace build_perturbation_space(const PwlFunction& f, const Cover& cover) {
  if (!cover.uncovered.empty())
    throw Error(ErrorKind::kUncoveredInterval,
                "(" + cover.uncovered.front().lo.str() + "," + cover.uncovered.front().hi.str() + ")");
  PerturbationSpace sp;
  std::vector<std::pair<Interval, std::size_t>> all;
  for (std::size_t c = 0; c < cover.components.size(); ++c)
    for (const auto& iv : cover.components[c]) all.emplace_back(iv, c);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  for (auto& [iv, c] : all) {
    sp.pieces.push_back(iv);
    sp.piece_var.push_back(c);
  }
  sp.num_slope_vars = cover.components.size();
  sp.jump_points = jump_points_of(f);
  return sp;
}

Rational epsilon_for(const PwlFunction& f, const PwlFunction& tilde) {
  if (is_zero_function(tilde)) throw Error(ErrorKind::kZeroPerturbation, "phi~ is identically zero");
  std::vector<Rational> bhat = merged(f.xs(), tilde.xs());
  bool continuous = f.is_continuous() && tilde.is_continuous();
  std::optional<Rational> delta;
  Rational sigma;
  for (const auto& [x, y] : complex_vertices(bhat)) {
    if (y < x) continue;
    for (const auto& p : all_patterns()) {
      if (continuous && p != LimitPattern{}) continue;
      if (!pattern_valid_at(p, x, y)) continue;
      Rational s = nabla_pattern(f, x, y, p);
      if (s.sign() <= 0) continue;
      if (!delta || s < *delta) delta = s;
      Rational t = nabla_pattern(tilde, x, y, p).abs();
      if (t > sigma) sigma = t;
    }
  }
  if (!delta || sigma.is_zero()) return Rational(1);
  return *delta / sigma;
}

bool verify_perturbation(const PwlFunction& f, const Perturbation& p) {
  if (p.epsilon.sign() <= 0 || is_zero_function(p.phi_tilde)) return false;
  PwlFunction plus = linear_combination(Rational(1), f, p.epsilon, p.phi_tilde);
  if (!maximality_test(plus).is_maximal) return false;
  PwlFunction minus = linear_combination(Rational(1), f, -p.epsilon, p.phi_tilde);
  return maximality_test(minus).is_maximal;
}

std::optional<ExtremalityVerdict> quick_filters(const PwlFunction& f) {
  if (!maximality_test(f).is_maximal) throw Error(ErrorKind::kNotMaximal, "quick_filters needs a maximal function");
  const Rational& x1 = f.breakpoints()[1].x;
  Rational a = f.limit(x1, Side::kLeft);
  PwlFunction id = identity_fn();
  if (a == x1) {
    if (!(f == id)) return std::nullopt;
    ExtremalityVerdict v;
    v.status = ExtremalityStatus::kExtreme;
    v.reason = "identity";
    v.cover = covered_components(f);
    return v;
  }
  if (a.sign() > 0 && a < x1) {
    Rational s = a / x1;
    Rational eps = min(Rational(1), s / (Rational(1) - s));
    Perturbation p{linear_combination(Rational(1), id, Rational(-1), f), eps};
    ExtremalityVerdict v;
    v.cover = covered_components(f);
    if (verify_perturbation(f, p)) {
      v.status = ExtremalityStatus::kNotExtreme;
      v.reason = "first piece has slope strictly between 0 and 1";
      v.witness = std::move(p);
    } else {
      v.status = ExtremalityStatus::kInconclusive;
      v.reason = "decomposition with the identity failed verification";
    }
    return v;
  }
  return std::nullopt;
}

std::optional<Perturbation> equivariant_perturbation(const PwlFunction& f, const Interval& uncovered) {
  auto g = analyze_grid(f);
  if (!g) return std::nullopt;
  long lo = grid_index(uncovered.lo, g->Q), hi = grid_index(uncovered.hi, g->Q);
  // cells whose class never meets the cover are free to move
  std::set<std::size_t> classes;
  for (long i = lo; i < hi; ++i) {
    if (g->covered[i]) return std::nullopt;
    if (!g->covered_classes.count(g->cls[i])) classes.insert(g->cls[i]);
  }
  if (classes.empty()) return std::nullopt;
  std::vector<long> orbit;
  for (long i = 0; i < g->Q; ++i)
    if (classes.count(g->cls[i])) orbit.push_back(i);
  if (orbit.empty()) return std::nullopt;
  return checked(f, bump_on_cells(orbit, g->Q));
}

ExtremalityVerdict extremality_test(const PwlFunction& f) {
  if (auto q = quick_filters(f)) return *q;
  ExtremalityVerdict v;
  v.cover = covered_components(f);
  if (v.cover.uncovered.empty()) {
    PerturbationSpace sp = build_perturbation_space(f, v.cover);
    return solve_system(f, sp, std::move(v));
  }
  for (const auto& iv : v.cover.uncovered) {
    if (auto p = equivariant_perturbation(f, iv)) {
      v.status = ExtremalityStatus::kNotExtreme;
      v.witness = std::move(p);
      v.reason = "equivariant perturbation on (" + iv.lo.str() + "," + iv.hi.str() + ")";
      return v;
    }
  }
  auto g = analyze_grid(f);
  if (!g) {
    v.status = ExtremalityStatus::kInconclusive;
    v.reason = "breakpoint denominators exceed the grid limit";
    return v;
  }
  for (long i = 0; i < g->Q; ++i) {
    if (!g->covered_classes.count(g->cls[i])) {
      v.status = ExtremalityStatus::kInconclusive;
      v.reason = "uncovered, no verified perturbation";
      return v;
    }
  }
  v.diagnostics.indirect_cover = true;
  PerturbationSpace sp = space_from_classes(f, *g);
  return solve_system(f, sp, std::move(v));
}

}  // namespace dff
