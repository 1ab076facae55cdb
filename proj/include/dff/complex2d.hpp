#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dff/pwl.hpp"
#include "dff/rational.hpp"

namespace dff {

enum class Dir : std::int8_t { kMinus = -1, kZero = 0, kPlus = 1 };

// Direction of approach to a vertex in x, y and x+y.
struct LimitPattern {
  Dir dx = Dir::kZero;
  Dir dy = Dir::kZero;
  Dir dz = Dir::kZero;
  bool operator==(const LimitPattern&) const = default;
};

std::string to_string(const LimitPattern& p);
Side side_of(Dir d);

// The 13 sign patterns of (dx, dy, dx+dy) reachable by a direction in the plane.
const std::array<LimitPattern, 13>& all_patterns();
bool pattern_valid_at(const LimitPattern& p, const Rational& x, const Rational& y);

using Point2 = std::pair<Rational, Rational>;

struct Cell {
  Rational lo;
  Rational hi;
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& t) const { return lo <= t && t <= hi; }
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell& o) const {
    if (auto c = lo <=> o.lo; c != 0) return c;
    return hi <=> o.hi;
  }
};

struct Face {
  Cell I, J, K;
  int dim = 0;
  std::vector<Point2> vertices;  // counterclockwise for 2-dimensional faces

  bool contains(const Point2& v) const {
    return I.contains(v.first) && J.contains(v.second) && K.contains(v.first + v.second);
  }
  bool operator==(const Face& o) const { return I == o.I && J == o.J && K == o.K; }
};

bool face_less(const Face& a, const Face& b);

struct Complex2D {
  std::vector<Rational> breakpoints;
  std::vector<Face> faces;
  std::vector<bool> additive;
};

struct Interval {
  Rational lo;
  Rational hi;
  bool operator==(const Interval&) const = default;
};

struct Cover {
  std::vector<std::vector<Interval>> components;  // closed intervals
  std::vector<Interval> uncovered;                // open intervals
};

Complex2D build_complex(const PwlFunction& f);
// Complex over the given breakpoint set (must contain those of f).
Complex2D build_complex(const PwlFunction& f, const std::vector<Rational>& breakpoints);

// Limit of phi(x+y)-phi(x)-phi(y) along relint(F) towards v.
Rational nabla_at(const PwlFunction& f, const Face& face, const Point2& v);
// Same slack with one-sided limits chosen by a pattern.
Rational nabla_pattern(const PwlFunction& f, const Rational& x, const Rational& y, const LimitPattern& p);

std::vector<Face> additive_faces(const PwlFunction& f);
Cover covered_components(const PwlFunction& f);

// All points of the triangle where at least two of x, y, x+y lie in B, sorted.
std::vector<Point2> complex_vertices(const std::vector<Rational>& breakpoints);

struct VertexSlack {
  Rational x;
  Rational y;
  LimitPattern pattern;
  Rational slack;
};

// Slack for every vertex of the complex over `breakpoints` and every valid pattern.
std::vector<VertexSlack> vertex_slacks(const PwlFunction& f, const std::vector<Rational>& breakpoints);

// Additive 2-dimensional faces of f on its own complex.
std::vector<Face> additive_2d_faces(const PwlFunction& f);

// Additive 1-dimensional faces of f (edges where some adjacent limit direction is additive).
std::vector<Face> additive_edges(const PwlFunction& f);

}  // namespace dff
