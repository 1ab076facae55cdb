#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>

#include "dff/error.hpp"
#include "dff/search.hpp"

namespace dff {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime), hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t to_mod(const Rational& v) {
  if (v.is_small()) {
    std::int64_t r = v.small_num() % static_cast<std::int64_t>(kPrime);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(kPrime) : r);
  }
  mpz_class z = v.numerator() % mpz_class(std::to_string(kPrime));
  if (z < 0) z += mpz_class(std::to_string(kPrime));
  return std::stoull(z.get_str());
}

struct Ray {
  RationalRow v;
  std::vector<std::uint64_t> zero;  // bitset over processed rows
};

Rational dot(const RationalRow& a, const RationalRow& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

// Divides an integer vector by the gcd of its entries.
void make_primitive(RationalRow& v) {
  bool small = std::all_of(v.begin(), v.end(), [](const Rational& t) { return t.is_small(); });
  if (!small) {
    v = integer_primitive(v);
    return;
  }
  std::int64_t g = 0;
  for (const auto& t : v) g = std::gcd(g, t.small_num());
  if (g <= 1) return;
  for (auto& t : v) t = Rational(t.small_num() / g);
}

// Rank of subsets of the constraint rows, by elimination mod a prime when that is exact.
class RankOracle {
 public:
  RankOracle(const std::vector<RationalRow>& rows, std::size_t d) : rows_(rows), d_(d) {
    std::vector<double> norms;
    for (const auto& r : rows) {
      double s = 0;
      for (const auto& t : r) s += t.to_double() * t.to_double();
      norms.push_back(0.5 * std::log2(s));
    }
    std::sort(norms.rbegin(), norms.rend());
    double bound = 0;
    for (std::size_t i = 0; i < std::min(d, norms.size()); ++i) bound += norms[i];
    // every minor is nonzero mod p when its Hadamard bound stays below p
    modular_ = bound < 60.0;
    if (modular_)
      for (const auto& r : rows) {
        std::vector<std::uint64_t> m;
        for (const auto& t : r) m.push_back(to_mod(t));
        mod_.push_back(std::move(m));
      }
  }

  bool modular() const { return modular_; }

  // True when the rows flagged in `set` have rank at least `target`.
  bool rank_at_least(const std::vector<std::uint64_t>& set, std::size_t target) const {
    if (target == 0) return true;
    if (!modular_) {
      RowEchelon ech(d_);
      for_each_bit(set, [&](std::size_t i) { ech.add(rows_[i]); return ech.rank() < target; });
      return ech.rank() >= target;
    }
    std::vector<std::vector<std::uint64_t>> basis;
    std::vector<std::size_t> piv;
    for_each_bit(set, [&](std::size_t i) {
      std::vector<std::uint64_t> r = mod_[i];
      for (std::size_t b = 0; b < basis.size(); ++b) {
        std::uint64_t c = r[piv[b]];
        if (!c) continue;
        for (std::size_t j = 0; j < d_; ++j)
          if (basis[b][j]) r[j] = (r[j] + kPrime - mulmod(c, basis[b][j])) % kPrime;
      }
      std::size_t p = 0;
      while (p < d_ && !r[p]) ++p;
      if (p == d_) return true;
      std::uint64_t inv = powmod(r[p], kPrime - 2);
      for (auto& t : r) t = mulmod(t, inv);
      basis.push_back(std::move(r));
      piv.push_back(p);
      return basis.size() < target;
    });
    return basis.size() >= target;
  }

 private:
  template <typename Fn>
  static void for_each_bit(const std::vector<std::uint64_t>& set, Fn&& fn) {
    for (std::size_t w = 0; w < set.size(); ++w) {
      std::uint64_t bits = set[w];
      while (bits) {
        std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (!fn(i)) return;
      }
    }
  }

  const std::vector<RationalRow>& rows_;
  std::size_t d_;
  bool modular_ = false;
  std::vector<std::vector<std::uint64_t>> mod_;
};

// Solves M x = e_col exactly; M is square and nonsingular.
std::vector<RationalRow> inverse_columns(const std::vector<RationalRow>& M) {
  const std::size_t d = M.size();
  std::vector<RationalRow> a(d, RationalRow(2 * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[i][j] = M[i][j];
    a[i][d + i] = 1;
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (a[p][c].is_zero()) ++p;
    std::swap(a[p], a[c]);
    Rational inv = Rational(1) / a[c][c];
    for (auto& t : a[c]) t *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * d; ++j)
        if (!a[c][j].is_zero()) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<RationalRow> cols(d, RationalRow(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) cols[j][i] = a[i][d + j];
  return cols;
}

std::vector<RationalRow> finish(const AffineReduction& red, std::vector<RationalRow> pts) {
  std::vector<RationalRow> out;
  for (const auto& u : pts) out.push_back(red.lift(u));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<RationalRow> enumerate_vertices(const HRep& h) {
  AffineReduction red = eliminate_equalities(h);
  const std::size_t k = red.reduced.num_vars, d = k + 1;
  if (k == 0) return finish(red, {RationalRow{}});
  // homogenized rows (rhs, -row) . (t, u) >= 0, with t >= 0 first and the rest in lexicographic order
  std::vector<RationalRow> rows;
  for (const auto& c : red.reduced.inequalities) {
    RationalRow r{c.rhs};
    for (const auto& t : c.row) r.push_back(-t);
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end());
  RationalRow t_row(d);
  t_row[0] = 1;
  rows.insert(rows.begin(), t_row);
  const std::size_t n = rows.size(), words = (n + 63) / 64;
  RankOracle oracle(rows, d);

  std::vector<std::size_t> initial;
  {
    RowEchelon ech(d);
    for (std::size_t i = 0; i < n && initial.size() < d; ++i)
      if (ech.add(rows[i])) initial.push_back(i);
  }
  if (initial.size() < d) throw Error(ErrorKind::kInfeasible, "polytope is unbounded");
  std::vector<RationalRow> M;
  for (auto i : initial) M.push_back(rows[i]);
  std::vector<Ray> rays;
  auto cols = inverse_columns(M);
  for (std::size_t c = 0; c < d; ++c) {
    Ray r{integer_primitive(cols[c]), std::vector<std::uint64_t>(words, 0)};
    for (std::size_t i = 0; i < d; ++i)
      if (i != c) r.zero[initial[i] / 64] |= std::uint64_t{1} << (initial[i] % 64);
    rays.push_back(std::move(r));
  }
  std::vector<bool> done(n, false);
  for (auto i : initial) done[i] = true;

  for (std::size_t idx = 0; idx < n; ++idx) {
    if (done[idx]) continue;
    const RationalRow& a = rows[idx];
    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = dot(a, rays[r].v);
      if (s[r].sign() > 0) pos.push_back(r);
      else if (s[r].sign() < 0) neg.push_back(r);
    }
    std::vector<Ray> next;
    next.reserve(rays.size());
    if (!neg.empty()) {
      std::vector<std::uint64_t> common(words);
      for (auto p : pos)
        for (auto q : neg) {
          std::size_t cnt = 0;
          for (std::size_t w = 0; w < words; ++w) {
            common[w] = rays[p].zero[w] & rays[q].zero[w];
            cnt += static_cast<std::size_t>(std::popcount(common[w]));
          }
          if (cnt + 2 < d) continue;
          if (!oracle.rank_at_least(common, d - 2)) continue;
          Ray nr{RationalRow(d), common};
          for (std::size_t j = 0; j < d; ++j) nr.v[j] = s[p] * rays[q].v[j] - s[q] * rays[p].v[j];
          make_primitive(nr.v);
          nr.zero[idx / 64] |= std::uint64_t{1} << (idx % 64);
          next.push_back(std::move(nr));
        }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (s[r].sign() < 0) continue;
      if (s[r].is_zero()) rays[r].zero[idx / 64] |= std::uint64_t{1} << (idx % 64);
      next.push_back(std::move(rays[r]));
    }
    rays = std::move(next);
    done[idx] = true;
  }

  std::vector<RationalRow> pts;
  for (const auto& r : rays) {
    if (r.v[0].sign() <= 0) continue;
    RationalRow u(k);
    for (std::size_t j = 0; j < k; ++j) u[j] = r.v[j + 1] / r.v[0];
    pts.push_back(std::move(u));
  }
  if (pts.empty()) throw Error(ErrorKind::kInfeasible, "empty polytope");
  return finish(red, std::move(pts));
}

std::vector<RationalRow> enumerate_vertices_brute(const HRep& h) {
  AffineReduction red = eliminate_equalities(h);
  const auto& ineq = red.reduced.inequalities;
  const std::size_t k = red.reduced.num_vars, m = ineq.size();
  if (k == 0) return finish(red, {RationalRow{}});
  std::vector<RationalRow> pts;
  std::vector<std::size_t> pick;
  auto feasible = [&](const RationalRow& u) {
    for (const auto& c : ineq)
      if (dot(c.row, u) > c.rhs) return false;
    return true;
  };
  auto solve = [&]() {
    RowEchelon ech(k + 1);
    for (auto i : pick) {
      RationalRow r = ineq[i].row;
      r.push_back(-ineq[i].rhs);
      if (!ech.add(std::move(r))) return;
    }
    auto piv = ech.pivots();
    if (piv.size() != k || piv.back() >= k) return;
    RationalRow u(k);
    auto rr = ech.reduced_rows();
    for (std::size_t j = 0; j < k; ++j) u[piv[j]] = -rr[j][k];
    if (feasible(u)) pts.push_back(std::move(u));
  };
  // all k-subsets in lexicographic order
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == k) {
      solve();
      return;
    }
    for (std::size_t i = from; i + (k - pick.size()) <= m; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  if (pts.empty()) throw Error(ErrorKind::kInfeasible, "empty polytope");
  return finish(red, std::move(pts));
}

}  // namespace dff
