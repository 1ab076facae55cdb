#include <algorithm>
#include <set>
#include <numeric>

#include "dff/complex2d.hpp"
#include "dff/error.hpp"
#include "dff/search.hpp"

namespace dff {

namespace {

// Variable holding phi at i/q approached from `side`; the limits at 0 and 1 are the values there.
std::size_t slot(int q, SearchMode mode, int i, Side side) {
  if (mode == SearchMode::kContinuous) return static_cast<std::size_t>(i);
  if (i == 0) return 0;
  if (i == q) return static_cast<std::size_t>(3 * (q - 1) + 1);
  int off = side == Side::kLeft ? 0 : (side == Side::kAt ? 1 : 2);
  return static_cast<std::size_t>(1 + 3 * (i - 1) + off);
}

// Scales (row, rhs) by a positive factor to coprime integers.
void normalize(RationalRow& row, Rational& rhs) {
  RationalRow all = row;
  all.push_back(rhs);
  bool nonzero = false;
  for (const auto& v : all) nonzero = nonzero || !v.is_zero();
  if (!nonzero) return;
  all = integer_primitive(all);
  rhs = all.back();
  all.pop_back();
  row = std::move(all);
}

}  // namespace

const char* to_string(SearchMode m) noexcept {
  return m == SearchMode::kContinuous ? "continuous" : "discontinuous";
}

SearchMode parse_search_mode(const std::string& s) {
  if (s == "continuous") return SearchMode::kContinuous;
  if (s == "discontinuous") return SearchMode::kDiscontinuous;
  throw Error(ErrorKind::kBadParameter, "unknown mode " + s);
}

std::size_t num_grid_vars(int q, SearchMode mode) {
  return mode == SearchMode::kContinuous ? static_cast<std::size_t>(q + 1) : static_cast<std::size_t>(3 * (q - 1) + 2);
}

PwlFunction DiscreteFunction::interpolate() const {
  if (values.size() != num_grid_vars(q, mode)) throw Error(ErrorKind::kBadParameter, "grid data has the wrong length");
  std::vector<Rational> v(q + 1);
  for (int i = 0; i <= q; ++i) v[i] = values[slot(q, mode, i, Side::kAt)];
  if (mode == SearchMode::kContinuous) return interpolate_discrete(v, q);
  GridLimits lim;
  lim.left.resize(q + 1);
  lim.right.resize(q + 1);
  for (int i = 0; i <= q; ++i) {
    lim.left[i] = values[slot(q, mode, i, Side::kLeft)];
    lim.right[i] = values[slot(q, mode, i, Side::kRight)];
  }
  return interpolate_discrete(v, q, &lim);
}

HRep build_polytope(int q, SearchMode mode) {
  if (q < 2) throw Error(ErrorKind::kBadQ, "q must be at least 2, got " + std::to_string(q));
  HRep h;
  h.num_vars = num_grid_vars(q, mode);
  auto unit = [&](std::size_t v, const Rational& c) {
    RationalRow r(h.num_vars);
    r[v] = c;
    return r;
  };
  h.equalities.push_back({unit(0, 1), 0, "fixed"});
  for (int i = 0; 2 * i <= q; ++i) {
    RationalRow r(h.num_vars);
    r[slot(q, mode, i, Side::kAt)] += 1;
    r[slot(q, mode, q - i, Side::kAt)] += 1;
    h.equalities.push_back({std::move(r), 1, "symmetry(" + std::to_string(i) + ")"});
  }
  if (mode == SearchMode::kDiscontinuous) {
    for (int i = 1; 2 * i <= q; ++i) {
      RationalRow r(h.num_vars);
      r[slot(q, mode, i, Side::kLeft)] += 1;
      r[slot(q, mode, q - i, Side::kRight)] += 1;
      h.equalities.push_back({r, 1, "symmetry(" + std::to_string(i) + "-)"});
      if (2 * i == q) continue;
      RationalRow s(h.num_vars);
      s[slot(q, mode, i, Side::kRight)] += 1;
      s[slot(q, mode, q - i, Side::kLeft)] += 1;
      h.equalities.push_back({s, 1, "symmetry(" + std::to_string(i) + "+)"});
    }
  }
  for (int i = 0; i <= q; ++i)
    for (int j = i; i + j <= q; ++j) {
      std::string tag = std::to_string(i) + "," + std::to_string(j);
      if (mode == SearchMode::kContinuous) {
        if (i == 0) continue;  // a_0 + a_j <= a_j is trivial
        RationalRow r(h.num_vars);
        r[i] += 1;
        r[j] += 1;
        r[i + j] -= 1;
        h.inequalities.push_back({std::move(r), 0, "superadditivity(" + tag + ")"});
        continue;
      }
      Rational x(i, q), y(j, q);
      for (const auto& p : all_patterns()) {
        if (!pattern_valid_at(p, x, y)) continue;
        RationalRow r(h.num_vars);
        r[slot(q, mode, i, side_of(p.dx))] += 1;
        r[slot(q, mode, j, side_of(p.dy))] += 1;
        r[slot(q, mode, i + j, side_of(p.dz))] -= 1;
        h.inequalities.push_back({std::move(r), 0, "superadditivity(" + tag + "," + to_string(p) + ")"});
      }
    }
  for (std::size_t v = 1; v + 1 < h.num_vars; ++v) {
    h.inequalities.push_back({unit(v, -1), 0, "bound(" + std::to_string(v) + ")"});
    h.inequalities.push_back({unit(v, 1), 1, "bound(" + std::to_string(v) + ")"});
  }
  return h;
}

RationalRow AffineReduction::lift(const RationalRow& u) const {
  RationalRow x = origin;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (u[k].is_zero()) continue;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!basis[k][i].is_zero()) x[i] += u[k] * basis[k][i];
  }
  return x;
}

std::optional<Constraint> AffineReduction::map(const Constraint& c) const {
  const std::size_t n = origin.size(), k = basis.size();
  RationalRow row(k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t v = 0; v < n; ++v)
      if (!c.row[v].is_zero() && !basis[j][v].is_zero()) row[j] += c.row[v] * basis[j][v];
  Rational rhs = c.rhs;
  for (std::size_t v = 0; v < n; ++v)
    if (!c.row[v].is_zero()) rhs -= c.row[v] * origin[v];
  if (std::all_of(row.begin(), row.end(), [](const Rational& t) { return t.is_zero(); })) {
    if (rhs.sign() < 0) throw Error(ErrorKind::kInfeasible, "violated constant constraint " + c.label);
    return std::nullopt;
  }
  normalize(row, rhs);
  return Constraint{std::move(row), std::move(rhs), c.label};
}

AffineReduction eliminate_equalities(const HRep& h) {
  const std::size_t n = h.num_vars;
  // columns reversed so the highest-index variables become pivots; constant column last
  RowEchelon ech(n + 1);
  for (const auto& e : h.equalities) {
    RationalRow r(n + 1);
    for (std::size_t v = 0; v < n; ++v) r[n - 1 - v] = e.row[v];
    r[n] = -e.rhs;
    ech.add(std::move(r));
  }
  AffineReduction red;
  red.origin.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  auto rows = ech.reduced_rows();
  auto piv = ech.pivots();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (piv[r] == n) throw Error(ErrorKind::kInfeasible, "inconsistent equalities");
    is_pivot[n - 1 - piv[r]] = true;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!is_pivot[v]) red.free_vars.push_back(v);
  for (std::size_t r = 0; r < rows.size(); ++r) red.origin[n - 1 - piv[r]] = -rows[r][n];
  for (auto f : red.free_vars) {
    RationalRow col(n);
    col[f] = 1;
    for (std::size_t r = 0; r < rows.size(); ++r) col[n - 1 - piv[r]] = -rows[r][n - 1 - f];
    red.basis.push_back(std::move(col));
  }
  red.reduced.num_vars = red.free_vars.size();
  std::set<std::pair<RationalRow, Rational>> seen;
  for (const auto& c : h.inequalities) {
    auto m = red.map(c);
    if (!m || !seen.emplace(m->row, m->rhs).second) continue;
    red.reduced.inequalities.push_back(std::move(*m));
  }
  return red;
}

std::size_t affine_dimension(const std::vector<RationalRow>& pts) {
  if (pts.empty()) return 0;
  const std::size_t n = pts[0].size();
  RowEchelon ech(n);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RationalRow d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = pts[i][j] - pts[0][j];
    ech.add(std::move(d));
    if (ech.rank() == n) break;
  }
  return ech.rank();
}

}  // namespace dff
