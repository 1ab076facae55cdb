#include <algorithm>

#include "dff/error.hpp"
#include "dff/search.hpp"

namespace dff {

namespace {

// Dense tableau; the last column is the right-hand side, `obj` holds reduced costs and the objective value.
struct Tableau {
  std::vector<RationalRow> t;
  RationalRow obj;
  std::vector<std::size_t> basis;
  std::size_t ncols = 0;  // without the rhs column

  void pivot(std::size_t r, std::size_t c) {
    RationalRow& pr = t[r];
    Rational inv = Rational(1) / pr[c];
    for (auto& v : pr)
      if (!v.is_zero()) v *= inv;
    auto eliminate = [&](RationalRow& row) {
      if (row[c].is_zero()) return;
      Rational f = row[c];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (!pr[j].is_zero()) row[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i != r) eliminate(t[i]);
    eliminate(obj);
    basis[r] = c;
  }

  // Bland's rule. Returns false when unbounded.
  bool run(const std::vector<bool>& allowed, const std::optional<Rational>& stop_above) {
    for (;;) {
      if (stop_above && obj[ncols] > *stop_above) return true;
      std::size_t enter = ncols;
      for (std::size_t j = 0; j < ncols; ++j)
        if (allowed[j] && obj[j].sign() < 0) {
          enter = j;
          break;
        }
      if (enter == ncols) return true;
      std::size_t leave = t.size();
      Rational best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i][enter].sign() <= 0) continue;
        Rational ratio = t[i][ncols] / t[i][enter];
        if (leave == t.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_maximize(const std::vector<Constraint>& rows, const RationalRow& c, std::size_t num_vars,
                     const std::optional<Rational>& stop_above) {
  // x = xp - xn; columns: xp (n), xn (n), slacks (m), artificials
  const std::size_t n = num_vars, m = rows.size();
  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < m; ++i)
    if (rows[i].rhs.sign() < 0) art_rows.push_back(i);
  Tableau tb;
  tb.ncols = 2 * n + m + art_rows.size();
  tb.t.assign(m, RationalRow(tb.ncols + 1));
  tb.basis.assign(m, 0);
  std::size_t a = 0;
  for (std::size_t i = 0; i < m; ++i) {
    bool neg = rows[i].rhs.sign() < 0;
    Rational s = neg ? Rational(-1) : Rational(1);
    auto& r = tb.t[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i].row[j].is_zero()) continue;
      r[j] = s * rows[i].row[j];
      r[n + j] = -r[j];
    }
    r[2 * n + i] = s;
    r[tb.ncols] = s * rows[i].rhs;
    if (neg) {
      r[2 * n + m + a] = 1;
      tb.basis[i] = 2 * n + m + a;
      ++a;
    } else {
      tb.basis[i] = 2 * n + i;
    }
  }
  const std::size_t first_art = 2 * n + m;
  std::vector<bool> allowed(tb.ncols, true);
  if (!art_rows.empty()) {
    // phase 1: maximize -(sum of artificials)
    tb.obj.assign(tb.ncols + 1, Rational(0));
    for (auto i : art_rows)
      for (std::size_t j = 0; j <= tb.ncols; ++j)
        if (j < first_art || j == tb.ncols) tb.obj[j] -= tb.t[i][j];
    tb.run(allowed, std::nullopt);
    if (tb.obj[tb.ncols].sign() != 0) return {LpResult::kInfeasible, {}, {}};
    for (std::size_t i = 0; i < tb.t.size(); ++i) {
      if (tb.basis[i] < first_art) continue;
      std::size_t c2 = first_art;
      for (std::size_t j = 0; j < first_art; ++j)
        if (!tb.t[i][j].is_zero()) {
          c2 = j;
          break;
        }
      if (c2 < first_art) tb.pivot(i, c2);
    }
    for (std::size_t j = first_art; j < tb.ncols; ++j) allowed[j] = false;
  }
  tb.obj.assign(tb.ncols + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    tb.obj[j] = -c[j];
    tb.obj[n + j] = c[j];
  }
  for (std::size_t i = 0; i < tb.t.size(); ++i) {
    const Rational cb = tb.obj[tb.basis[i]];
    if (cb.is_zero()) continue;
    for (std::size_t j = 0; j <= tb.ncols; ++j)
      if (!tb.t[i][j].is_zero()) tb.obj[j] -= cb * tb.t[i][j];
  }
  if (!tb.run(allowed, stop_above)) return {LpResult::kUnbounded, {}, {}};
  LpResult res{LpResult::kOptimal, tb.obj[tb.ncols], RationalRow(n)};
  for (std::size_t i = 0; i < tb.t.size(); ++i) {
    std::size_t b = tb.basis[i];
    if (b < n) res.x[b] += tb.t[i][tb.ncols];
    else if (b < 2 * n) res.x[b - n] -= tb.t[i][tb.ncols];
  }
  return res;
}

HRep minimize_hrep(const HRep& h) {
  AffineReduction red = eliminate_equalities(h);
  const std::size_t k = red.reduced.num_vars;
  std::vector<std::optional<Constraint>> mapped;
  for (const auto& c : h.inequalities) mapped.push_back(red.map(c));
  std::vector<bool> keep(mapped.size());
  for (std::size_t i = 0; i < mapped.size(); ++i) keep[i] = mapped[i].has_value();
  std::vector<Constraint> all;
  for (const auto& m : mapped)
    if (m) all.push_back(*m);
  if (!all.empty()) {
    LpResult feas = lp_maximize(all, RationalRow(k), k);
    if (feas.status == LpResult::kInfeasible) throw Error(ErrorKind::kInfeasible, "empty polytope");
  }
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    if (!keep[i]) continue;
    std::vector<Constraint> others;
    for (std::size_t j = 0; j < mapped.size(); ++j)
      if (j != i && keep[j]) others.push_back(*mapped[j]);
    Constraint relaxed = *mapped[i];
    relaxed.rhs += 1;
    others.push_back(relaxed);
    LpResult r = lp_maximize(others, mapped[i]->row, k, mapped[i]->rhs);
    if (r.status == LpResult::kOptimal && r.value <= mapped[i]->rhs) keep[i] = false;
  }
  HRep out;
  out.num_vars = h.num_vars;
  out.equalities = h.equalities;
  for (std::size_t i = 0; i < h.inequalities.size(); ++i)
    if (keep[i]) out.inequalities.push_back(h.inequalities[i]);
  return out;
}

}  // namespace dff
