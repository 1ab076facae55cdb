#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dff {

// Exact fraction in lowest terms. Values that fit in int64 are kept inline,
// everything else spills into a GMP rational.
class Rational {
 public:
  Rational() noexcept = default;
  Rational(int v) noexcept : num_(v) {}
  Rational(long v) noexcept : num_(v) {}
  Rational(long long v) noexcept : num_(v) {}
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  // Accepts "p", "-p", "p/q". Throws dff::Error(kParse) on malformed input.
  static Rational parse(std::string_view s);

  std::string str() const;
  mpq_class to_mpq() const;
  double to_double() const;

  int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const noexcept { return big_ ? big_->get_den() == 1 : den_ == 1; }
  bool is_small() const noexcept { return !big_; }
  // Valid only when is_small().
  std::int64_t small_num() const noexcept { return num_; }
  std::int64_t small_den() const noexcept { return den_; }

  mpz_class numerator() const;
  mpz_class denominator() const;

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational floor() const;
  Rational frac() const { return *this - floor(); }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::size_t hash() const noexcept;

 private:
  friend struct RationalAccess;
  void set_from(const mpq_class& q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace dff

template <>
struct std::hash<dff::Rational> {
  std::size_t operator()(const dff::Rational& r) const noexcept { return r.hash(); }
};
