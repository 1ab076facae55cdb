#pragma once

#include <cstddef>
#include <vector>

#include "dff/rational.hpp"

namespace dff {

using RationalRow = std::vector<Rational>;

/// Incremental reduced row echelon form over the rationals.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t ncols) : ncols_(ncols) {}

  // Reduces `row` against the basis and keeps it if independent. Returns true if kept.
  bool add(RationalRow row);

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t nullity() const noexcept { return ncols_ - rows_.size(); }

  // Fully reduced rows sorted by pivot column.
  std::vector<RationalRow> reduced_rows() const;
  std::vector<std::size_t> pivots() const;
  // Nullspace basis: one vector per free column, free entry 1, ordered by free column.
  std::vector<RationalRow> nullspace() const;

 private:
  std::size_t ncols_;
  std::vector<RationalRow> rows_;
  std::vector<std::size_t> piv_;
};

// Scales a nonzero rational vector to coprime integers, keeping its direction.
RationalRow integer_primitive(const RationalRow& v);

std::size_t rank_of(const std::vector<RationalRow>& rows, std::size_t ncols);

}  // namespace dff
