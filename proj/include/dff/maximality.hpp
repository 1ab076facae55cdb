#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dff/complex2d.hpp"
#include "dff/gdff.hpp"
#include "dff/pwl.hpp"

namespace dff {

enum class ViolationKind {
  kRange,
  kAtZero,
  kSuperadditivity,
  kSymmetry,
  kContinuityAt0,
  kContinuityAt1,
  kNonnegativeNearZero,
  kTailSlopes,
};

const char* to_string(ViolationKind k) noexcept;

struct Violation {
  ViolationKind kind;
  Rational x;            // point, or first vertex coordinate
  Rational y;            // second vertex coordinate (superadditivity only)
  Side side = Side::kAt;  // which value at x was checked (range, symmetry)
  LimitPattern pattern;  // superadditivity only
  Rational slack;        // negative amount, or the nonzero defect for equalities
};

struct MaximalityVerdict {
  bool is_maximal = true;
  std::vector<Violation> violations;
};

MaximalityVerdict maximality_test(const PwlFunction& f);

// Vertex test of superadditivity; the witness is the most negative slack.
std::pair<bool, std::optional<VertexSlack>> is_superadditive(const PwlFunction& f);

MaximalityVerdict gdff_maximality_sufficient(const GdffFunction& psi);

struct KConditionReport {
  bool consistent = true;         // psi(r) <= (1 - psi(1 - k r)) / k for every sampled r, k
  std::size_t attained = 0;       // samples where some k <= k_max attains equality
  std::vector<Rational> failures;  // sampled r violating the inequality
};

// Sampled check of psi(r) = inf_k (1 - psi(1 - k r)) / k over k = 1..k_max.
KConditionReport gdff_k_condition_sampled(const GdffFunction& psi, const std::vector<Rational>& rs, int k_max);

}  // namespace dff
