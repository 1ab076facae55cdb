#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dff/linalg.hpp"
#include "dff/pwl.hpp"

namespace dff {

enum class SearchMode { kContinuous, kDiscontinuous };

const char* to_string(SearchMode m) noexcept;
SearchMode parse_search_mode(const std::string& s);

// row . x <= rhs for inequalities, row . x == rhs for equalities.
struct Constraint {
  RationalRow row;
  Rational rhs;
  std::string label;
};

struct HRep {
  std::size_t num_vars = 0;
  std::vector<Constraint> equalities;
  std::vector<Constraint> inequalities;
};

// Values on the grid i/q. Continuous: a_0..a_q. Discontinuous: a_0, then
// (left limit, value, right limit) for each interior point, then a_q.
struct DiscreteFunction {
  int q = 0;
  SearchMode mode = SearchMode::kContinuous;
  RationalRow values;

  PwlFunction interpolate() const;
};

std::size_t num_grid_vars(int q, SearchMode mode);

HRep build_polytope(int q, SearchMode mode);

// Solves the equalities for their highest-index variables: x = origin + basis * u.
struct AffineReduction {
  HRep reduced;            // over u, no equalities; trivial and duplicate rows dropped
  RationalRow origin;      // full coordinates of u = 0
  std::vector<RationalRow> basis;  // one full-coordinate column per free variable
  std::vector<std::size_t> free_vars;

  RationalRow lift(const RationalRow& u) const;
  // Constraint in reduced coordinates, scaled to coprime integers; nullopt if it became trivial.
  std::optional<Constraint> map(const Constraint& c) const;
};

// Throws Infeasible for an inconsistent equality system.
AffineReduction eliminate_equalities(const HRep& h);

struct LpResult {
  enum Status { kOptimal, kUnbounded, kInfeasible } status = kInfeasible;
  Rational value;
  RationalRow x;
};

// Exact simplex with Bland's rule: maximize c . x subject to A x <= b, x free.
// Stops early once the objective exceeds `stop_above` when given.
LpResult lp_maximize(const std::vector<Constraint>& rows, const RationalRow& c, std::size_t num_vars,
                     const std::optional<Rational>& stop_above = std::nullopt);

HRep minimize_hrep(const HRep& h);

// Vertices in full coordinates, exact, deduplicated, sorted lexicographically.
std::vector<RationalRow> enumerate_vertices(const HRep& h);

// Vertex set by trying every square subsystem of tight inequalities. Exponential; for cross-checks.
std::vector<RationalRow> enumerate_vertices_brute(const HRep& h);

// Affine dimension of the convex hull of the points.
std::size_t affine_dimension(const std::vector<RationalRow>& pts);

struct SearchOptions {
  SearchMode mode = SearchMode::kContinuous;
  bool minimize = true;
  unsigned threads = 1;
  std::optional<std::filesystem::path> functions_dir;
};

struct VertexVerdict {
  std::size_t index = 0;
  bool covered = false;
  std::string status;  // Extreme, NotExtreme or Inconclusive
};

struct SearchReport {
  int q = 0;
  SearchMode mode = SearchMode::kContinuous;
  std::size_t dim = 0;
  std::size_t n_inequalities_original = 0;
  std::optional<std::size_t> n_inequalities_minimized;
  std::size_t n_vertices = 0;
  std::size_t n_extreme = 0;
  std::size_t n_inconclusive = 0;
  std::string functions_dir;
  std::vector<VertexVerdict> verdicts;
  std::vector<DiscreteFunction> extreme;  // in vertex order
  double seconds_enumeration = 0;
  double seconds_filter = 0;
};

SearchReport search_extreme(int q, const SearchOptions& opt = {});

}  // namespace dff
