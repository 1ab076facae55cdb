#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dff/complex2d.hpp"
#include "dff/linalg.hpp"
#include "dff/pwl.hpp"

namespace dff {

enum class ExtremalityStatus { kExtreme, kNotExtreme, kInconclusive };

const char* to_string(ExtremalityStatus s) noexcept;

struct Perturbation {
  PwlFunction phi_tilde;
  Rational epsilon;
};

/// phi~(x) = g(x) . (s_1..s_k, h_1..h_m, w_1..w_m): slopes per piece class, jumps
/// phi~(a+) - phi~(a-) and point offsets phi~(a) - phi~(a-) at the jump points of phi.
struct PerturbationSpace {
  std::vector<Interval> pieces;        // partition of [0,1]
  std::vector<std::size_t> piece_var;  // slope variable of each piece
  std::size_t num_slope_vars = 0;
  std::vector<Rational> jump_points;

  std::size_t num_jump_vars() const { return jump_points.size(); }
  std::size_t num_vars() const { return num_slope_vars + 2 * jump_points.size(); }
  RationalRow row(const Rational& x, Side side) const;
  // Breakpoints phi~ may have: piece ends and jump points.
  std::vector<Rational> breakpoints() const;
  PwlFunction reconstruct(const RationalRow& coeffs) const;
};

struct ExtremalityDiagnostics {
  std::size_t additive_vertices = 0;
  std::size_t system_rows = 0;
  std::size_t system_rank = 0;
  std::size_t nullity = 0;
  std::size_t slope_vars = 0;
  std::size_t jump_vars = 0;
  bool used_system = false;
  bool indirect_cover = false;
};

struct ExtremalityVerdict {
  ExtremalityStatus status = ExtremalityStatus::kInconclusive;
  std::optional<Perturbation> witness;
  std::string reason;
  Cover cover;
  ExtremalityDiagnostics diagnostics;
};

std::optional<ExtremalityVerdict> quick_filters(const PwlFunction& f);
ExtremalityVerdict extremality_test(const PwlFunction& f);
PerturbationSpace build_perturbation_space(const PwlFunction& f, const Cover& cover);
Rational epsilon_for(const PwlFunction& f, const PwlFunction& phi_tilde);
std::optional<Perturbation> equivariant_perturbation(const PwlFunction& f, const Interval& uncovered);

// Both f + eps*phi~ and f - eps*phi~ maximal, and phi~ nonzero.
bool verify_perturbation(const PwlFunction& f, const Perturbation& p);

// Rows of the additivity system: grad phi~ = 0 wherever f is additive on the complex over `breakpoints`.
std::vector<RationalRow> additivity_rows(const PwlFunction& f, const PerturbationSpace& space,
                                         const std::vector<Rational>& breakpoints, std::size_t* count = nullptr);

}  // namespace dff
