#include "dff/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace dff {

bool RowEchelon::add(RationalRow row) {
  row.resize(ncols_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational& c = row[piv_[r]];
    if (c.is_zero()) continue;
    Rational f = c;
    const auto& br = rows_[r];
    for (std::size_t j = piv_[r]; j < ncols_; ++j)
      if (!br[j].is_zero()) row[j] -= f * br[j];
  }
  std::size_t p = 0;
  while (p < ncols_ && row[p].is_zero()) ++p;
  if (p == ncols_) return false;
  Rational inv = Rational(1) / row[p];
  for (std::size_t j = p; j < ncols_; ++j)
    if (!row[j].is_zero()) row[j] *= inv;
  // eliminate the new pivot from existing rows
  for (auto& br : rows_) {
    const Rational c = br[p];
    if (c.is_zero()) continue;
    for (std::size_t j = p; j < ncols_; ++j)
      if (!row[j].is_zero()) br[j] -= c * row[j];
  }
  rows_.push_back(std::move(row));
  piv_.push_back(p);
  return true;
}

std::vector<RationalRow> RowEchelon::reduced_rows() const {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return piv_[a] < piv_[b]; });
  std::vector<RationalRow> out;
  for (auto i : order) out.push_back(rows_[i]);
  return out;
}

std::vector<std::size_t> RowEchelon::pivots() const {
  std::vector<std::size_t> p = piv_;
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<RationalRow> RowEchelon::nullspace() const {
  std::vector<bool> is_piv(ncols_, false);
  for (auto p : piv_) is_piv[p] = true;
  std::vector<RationalRow> basis;
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (is_piv[f]) continue;
    RationalRow v(ncols_);
    v[f] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) v[piv_[r]] = -rows_[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalRow integer_primitive(const RationalRow& v) {
  mpz_class l = 1, g = 0;
  for (const auto& x : v)
    if (!x.is_zero()) l = lcm(l, x.denominator());
  RationalRow out;
  out.reserve(v.size());
  for (const auto& x : v) {
    mpz_class n = x.numerator() * (l / x.denominator());
    g = gcd(g, n);
    out.emplace_back(mpq_class(n));
  }
  if (g == 0 || g == 1) return out;
  Rational gr{mpq_class(g)};
  for (auto& x : out) x /= gr;
  return out;
}

std::size_t rank_of(const std::vector<RationalRow>& rows, std::size_t ncols) {
  RowEchelon e(ncols);
  for (const auto& r : rows) e.add(r);
  return e.rank();
}

}  // namespace dff
