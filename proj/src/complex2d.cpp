#include "dff/complex2d.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "dff/error.hpp"

namespace dff {

namespace {

constexpr Dir M = Dir::kMinus, Z = Dir::kZero, P = Dir::kPlus;

const std::array<LimitPattern, 13> kPatterns = {{
    {Z, Z, Z},
    {M, M, M}, {M, Z, M}, {M, P, M}, {M, P, Z}, {M, P, P},
    {Z, M, M}, {Z, P, P},
    {P, M, M}, {P, M, Z}, {P, M, P}, {P, Z, P}, {P, P, P},
}};

char dir_char(Dir d) { return d == M ? '-' : (d == P ? '+' : '0'); }

// Evaluates the affine piece of f selected by a cell of the complex.
Rational cell_eval(const PwlFunction& f, const Cell& c, const Rational& t) {
  if (c.is_point()) return f.evaluate(t);
  std::size_t i = f.piece_index((c.lo + c.hi) / 2);
  return f.piece_value(i, t);
}

Rational nabla_cells(const PwlFunction& f, const Cell& I, const Cell& J, const Cell& K, const Point2& v) {
  return cell_eval(f, K, v.first + v.second) - cell_eval(f, I, v.first) - cell_eval(f, J, v.second);
}

std::vector<Point2> convex_order(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Point2& o, const Point2& a, const Point2& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]).sign() <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Point2> polygon(const Cell& I, const Cell& J, const Cell& K) {
  std::vector<Point2> cand;
  auto in = [&](const Rational& x, const Rational& y) {
    return I.contains(x) && J.contains(y) && K.contains(x + y);
  };
  for (const auto* x : {&I.lo, &I.hi})
    for (const auto* y : {&J.lo, &J.hi})
      if (in(*x, *y)) cand.emplace_back(*x, *y);
  for (const auto* k : {&K.lo, &K.hi}) {
    for (const auto* x : {&I.lo, &I.hi}) {
      Rational y = *k - *x;
      if (in(*x, y)) cand.emplace_back(*x, y);
    }
    for (const auto* y : {&J.lo, &J.hi}) {
      Rational x = *k - *y;
      if (in(x, *y)) cand.emplace_back(x, *y);
    }
  }
  return convex_order(std::move(cand));
}

struct Cells {
  std::vector<Rational> b;
  Cell point(std::size_t i) const { return {b[i], b[i]}; }
  Cell interval(std::size_t i) const { return {b[i], b[i + 1]}; }
  std::size_t n() const { return b.size(); }
  // Cell containing t on the side given by d; a point cell when d is zero and t is in B.
  std::optional<Cell> cell_towards(const Rational& t, Dir d) const {
    auto it = std::lower_bound(b.begin(), b.end(), t);
    std::size_t k = static_cast<std::size_t>(it - b.begin());
    bool at = it != b.end() && *it == t;
    if (!at) {
      if (k == 0 || k == b.size()) return std::nullopt;
      return interval(k - 1);
    }
    if (d == Z) return point(k);
    if (d == M) return k == 0 ? std::nullopt : std::optional<Cell>(interval(k - 1));
    return k + 1 >= b.size() ? std::nullopt : std::optional<Cell>(interval(k));
  }
};

template <typename Fn>
void for_each_2d(const Cells& c, Fn&& fn) {
  std::size_t n = c.n();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      Rational slo = c.b[i] + c.b[j];
      if (!(slo < c.b.back())) break;
      Rational shi = c.b[i + 1] + c.b[j + 1];
      // first K with hi > slo
      std::size_t k = static_cast<std::size_t>(std::upper_bound(c.b.begin(), c.b.end(), slo) - c.b.begin());
      k = k == 0 ? 0 : k - 1;
      for (; k + 1 < n && c.b[k] < shi; ++k) {
        Cell I = c.interval(i), J = c.interval(j), K = c.interval(k);
        if (max(slo, K.lo) < min(shi, K.hi)) fn(I, J, K);
      }
    }
  }
}

bool is_additive_2d(const PwlFunction& f, const Face& F) {
  for (const auto& v : F.vertices)
    if (!nabla_cells(f, F.I, F.J, F.K, v).is_zero()) return false;
  return true;
}

// Additivity of a 1-dimensional face: some adjacent direction of the fixed coordinate works.
bool is_additive_1d(const PwlFunction& f, const Cells& c, const Face& F) {
  std::vector<std::tuple<Cell, Cell, Cell>> options;
  auto around = [&](const Cell& pt) {
    std::vector<Cell> r{pt};
    auto k = static_cast<std::size_t>(std::lower_bound(c.b.begin(), c.b.end(), pt.lo) - c.b.begin());
    if (k > 0) r.push_back(c.interval(k - 1));
    if (k + 1 < c.n()) r.push_back(c.interval(k));
    return r;
  };
  if (F.J.is_point()) {
    for (const auto& J : around(F.J)) options.emplace_back(F.I, J, F.K);
  } else if (F.I.is_point()) {
    for (const auto& I : around(F.I)) options.emplace_back(I, F.J, F.K);
  } else {
    for (const auto& K : around(F.K)) options.emplace_back(F.I, F.J, K);
  }
  for (const auto& [I, J, K] : options) {
    bool ok = true;
    for (const auto& v : F.vertices) {
      if (!nabla_cells(f, I, J, K, v).is_zero()) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool is_additive_0d(const PwlFunction& f, const Face& F) {
  const auto& [x, y] = F.vertices.front();
  for (const auto& p : kPatterns)
    if (pattern_valid_at(p, x, y) && nabla_pattern(f, x, y, p).is_zero()) return true;
  return false;
}

std::vector<Rational> merged_breakpoints(const PwlFunction& f, const std::vector<Rational>& extra) {
  std::set<Rational> s(extra.begin(), extra.end());
  for (const auto& b : f.breakpoints()) s.insert(b.x);
  return {s.begin(), s.end()};
}

}  // namespace

std::string to_string(const LimitPattern& p) {
  return {dir_char(p.dx), dir_char(p.dy), dir_char(p.dz)};
}

Side side_of(Dir d) { return d == M ? Side::kLeft : (d == P ? Side::kRight : Side::kAt); }

const std::array<LimitPattern, 13>& all_patterns() { return kPatterns; }

bool pattern_valid_at(const LimitPattern& p, const Rational& x, const Rational& y) {
  Rational z = x + y;
  if ((p.dx == M && x.sign() <= 0) || (p.dx == P && x >= 1)) return false;
  if ((p.dy == M && y.sign() <= 0) || (p.dy == P && y >= 1)) return false;
  if ((p.dz == M && z.sign() <= 0) || (p.dz == P && z >= 1)) return false;
  return true;
}

bool face_less(const Face& a, const Face& b) {
  return std::tie(a.I, a.J, a.K) < std::tie(b.I, b.J, b.K);
}

Rational nabla_pattern(const PwlFunction& f, const Rational& x, const Rational& y, const LimitPattern& p) {
  return f.limit(x + y, side_of(p.dz)) - f.limit(x, side_of(p.dx)) - f.limit(y, side_of(p.dy));
}

Rational nabla_at(const PwlFunction& f, const Face& face, const Point2& v) {
  if (!face.contains(v))
    throw Error(ErrorKind::kVertexNotInFace, "(" + v.first.str() + "," + v.second.str() + ")");
  return nabla_cells(f, face.I, face.J, face.K, v);
}

std::vector<Point2> complex_vertices(const std::vector<Rational>& B) {
  std::vector<Point2> pts;
  for (const auto& a : B) {
    for (const auto& b : B) {
      if (a + b <= 1) pts.emplace_back(a, b);
      if (b >= a) {
        pts.emplace_back(a, b - a);
        pts.emplace_back(b - a, a);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<VertexSlack> vertex_slacks(const PwlFunction& f, const std::vector<Rational>& B) {
  std::vector<VertexSlack> out;
  for (const auto& [x, y] : complex_vertices(B)) {
    for (const auto& p : kPatterns) {
      if (!pattern_valid_at(p, x, y)) continue;
      out.push_back({x, y, p, nabla_pattern(f, x, y, p)});
    }
  }
  return out;
}

Complex2D build_complex(const PwlFunction& f) { return build_complex(f, f.xs()); }

Complex2D build_complex(const PwlFunction& f, const std::vector<Rational>& breakpoints) {
  Cells c{merged_breakpoints(f, breakpoints)};
  Complex2D cx;
  cx.breakpoints = c.b;
  std::size_t n = c.n();
  for_each_2d(c, [&](const Cell& I, const Cell& J, const Cell& K) {
    cx.faces.push_back({I, J, K, 2, polygon(I, J, K)});
  });
  // horizontal and vertical edges
  for (std::size_t p = 0; p < n; ++p) {
    const Rational& b = c.b[p];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t k = 0; k + 1 < n; ++k) {
        Rational lo = max(c.b[i], c.b[k] - b), hi = min(c.b[i + 1], c.b[k + 1] - b);
        if (!(lo < hi)) continue;
        cx.faces.push_back({c.interval(i), c.point(p), c.interval(k), 1, {{lo, b}, {hi, b}}});
        cx.faces.push_back({c.point(p), c.interval(i), c.interval(k), 1, {{b, lo}, {b, hi}}});
      }
    }
  }
  // diagonal edges
  for (std::size_t p = 0; p < n; ++p) {
    const Rational& s = c.b[p];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = 0; j + 1 < n; ++j) {
        Rational lo = max(c.b[i], s - c.b[j + 1]), hi = min(c.b[i + 1], s - c.b[j]);
        if (!(lo < hi)) continue;
        cx.faces.push_back({c.interval(i), c.interval(j), c.point(p), 1, {{lo, s - lo}, {hi, s - hi}}});
      }
    }
  }
  for (const auto& v : complex_vertices(c.b)) {
    auto I = c.cell_towards(v.first, Z), J = c.cell_towards(v.second, Z),
         K = c.cell_towards(v.first + v.second, Z);
    cx.faces.push_back({*I, *J, *K, 0, {v}});
  }
  std::sort(cx.faces.begin(), cx.faces.end(), face_less);
  cx.additive.reserve(cx.faces.size());
  for (const auto& F : cx.faces) {
    bool a = F.dim == 2 ? is_additive_2d(f, F) : (F.dim == 1 ? is_additive_1d(f, c, F) : is_additive_0d(f, F));
    cx.additive.push_back(a);
  }
  return cx;
}

std::vector<Face> additive_2d_faces(const PwlFunction& f) {
  Cells c{f.xs()};
  std::vector<Face> out;
  for_each_2d(c, [&](const Cell& I, const Cell& J, const Cell& K) {
    Face F{I, J, K, 2, polygon(I, J, K)};
    if (is_additive_2d(f, F)) out.push_back(std::move(F));
  });
  std::sort(out.begin(), out.end(), face_less);
  return out;
}

std::vector<Face> additive_edges(const PwlFunction& f) {
  Complex2D cx = build_complex(f);
  std::vector<Face> out;
  for (std::size_t i = 0; i < cx.faces.size(); ++i)
    if (cx.faces[i].dim == 1 && cx.additive[i]) out.push_back(cx.faces[i]);
  return out;
}

std::vector<Face> additive_faces(const PwlFunction& f) {
  Complex2D cx = build_complex(f);
  Cells c{cx.breakpoints};
  using Key = std::tuple<Cell, Cell, Cell>;
  std::map<Key, std::size_t> index;
  for (std::size_t i = 0; i < cx.faces.size(); ++i) {
    const auto& F = cx.faces[i];
    index.emplace(Key{F.I, F.J, F.K}, i);
  }
  auto additive_at = [&](const Cell& I, const Cell& J, const Cell& K, int min_dim) {
    auto it = index.find(Key{I, J, K});
    return it != index.end() && cx.faces[it->second].dim >= min_dim && cx.additive[it->second];
  };
  std::vector<Face> out;
  for (std::size_t i = 0; i < cx.faces.size(); ++i) {
    if (!cx.additive[i]) continue;
    const Face& F = cx.faces[i];
    bool inside = false;
    if (F.dim == 1 || F.dim == 0) {
      const auto& [x, y] = F.vertices.front();
      Point2 probe = F.dim == 1 ? Point2((F.vertices[0].first + F.vertices[1].first) / 2,
                                         (F.vertices[0].second + F.vertices[1].second) / 2)
                                : Point2(x, y);
      for (const auto& p : kPatterns) {
        if (!pattern_valid_at(p, probe.first, probe.second)) continue;
        auto I = c.cell_towards(probe.first, p.dx), J = c.cell_towards(probe.second, p.dy),
             K = c.cell_towards(probe.first + probe.second, p.dz);
        if (!I || !J || !K) continue;
        int d = 3 - int(I->is_point()) - int(J->is_point()) - int(K->is_point());
        if (d <= F.dim) continue;
        if (additive_at(*I, *J, *K, F.dim + 1)) {
          inside = true;
          break;
        }
      }
    }
    if (!inside) out.push_back(F);
  }
  return out;
}

Cover covered_components(const PwlFunction& f) {
  std::vector<Face> faces = additive_2d_faces(f);
  std::set<Rational> ends;
  for (const auto& b : f.breakpoints()) ends.insert(b.x);
  struct Proj {
    Rational lo[3], hi[3];
  };
  std::vector<Proj> projs;
  for (const auto& F : faces) {
    Proj p{{F.vertices[0].first, F.vertices[0].second, F.vertices[0].first + F.vertices[0].second},
           {F.vertices[0].first, F.vertices[0].second, F.vertices[0].first + F.vertices[0].second}};
    for (const auto& [x, y] : F.vertices) {
      Rational v[3] = {x, y, x + y};
      for (int t = 0; t < 3; ++t) {
        if (v[t] < p.lo[t]) p.lo[t] = v[t];
        if (v[t] > p.hi[t]) p.hi[t] = v[t];
      }
    }
    for (int t = 0; t < 3; ++t) {
      ends.insert(p.lo[t]);
      ends.insert(p.hi[t]);
    }
    projs.push_back(std::move(p));
  }
  std::vector<Rational> e(ends.begin(), ends.end());
  std::size_t m = e.size() - 1;
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<bool> covered(m, false);
  auto pos = [&](const Rational& t) {
    return static_cast<std::size_t>(std::lower_bound(e.begin(), e.end(), t) - e.begin());
  };
  for (const auto& p : projs) {
    std::size_t root = m;
    for (int t = 0; t < 3; ++t) {
      for (std::size_t k = pos(p.lo[t]); k < pos(p.hi[t]); ++k) {
        covered[k] = true;
        if (root == m) root = find(k);
        else parent[find(k)] = root;
      }
    }
  }
  Cover cover;
  std::map<std::size_t, std::size_t> comp_of_root;
  for (std::size_t k = 0; k < m; ++k) {
    if (!covered[k]) {
      if (!cover.uncovered.empty() && cover.uncovered.back().hi == e[k]) cover.uncovered.back().hi = e[k + 1];
      else cover.uncovered.push_back({e[k], e[k + 1]});
      continue;
    }
    std::size_t r = find(k);
    auto [it, fresh] = comp_of_root.emplace(r, cover.components.size());
    if (fresh) cover.components.emplace_back();
    auto& comp = cover.components[it->second];
    if (!comp.empty() && comp.back().hi == e[k]) comp.back().hi = e[k + 1];
    else comp.push_back({e[k], e[k + 1]});
  }
  return cover;
}

}  // namespace dff
