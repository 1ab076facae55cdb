#include "dff/rational.hpp"

#include <limits>
#include <ostream>

#include "dff/error.hpp"

namespace dff {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class mpz_from(i128 v) {
  bool neg = v < 0;
  u128 u = neg ? u128(0) - u128(v) : u128(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool fits(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

}  // namespace

const char* to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kNonCanonicalDomain: return "NonCanonicalDomain";
    case ErrorKind::kDuplicateBreakpoint: return "DuplicateBreakpoint";
    case ErrorKind::kInvalidBreakpoint: return "InvalidBreakpoint";
    case ErrorKind::kOutOfDomain: return "OutOfDomain";
    case ErrorKind::kSideUnavailable: return "SideUnavailable";
    case ErrorKind::kMissingGridPoint: return "MissingGridPoint";
    case ErrorKind::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::kInnerDiscontinuous: return "InnerDiscontinuous";
    case ErrorKind::kBadInterval: return "BadInterval";
    case ErrorKind::kVertexNotInFace: return "VertexNotInFace";
    case ErrorKind::kNotMaximal: return "NotMaximal";
    case ErrorKind::kUncoveredInterval: return "UncoveredInterval";
    case ErrorKind::kZeroPerturbation: return "ZeroPerturbation";
    case ErrorKind::kUnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorKind::kLambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorKind::kNotMinimal: return "NotMinimal";
    case ErrorKind::kBadQ: return "BadQ";
    case ErrorKind::kInfeasible: return "Infeasible";
    case ErrorKind::kBadParameter: return "BadParameter";
    case ErrorKind::kUnknownName: return "UnknownName";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  u128 g = gcd128(nn < 0 ? u128(-nn) : u128(nn), u128(dd));
  if (g > 1) {
    nn /= i128(g);
    dd /= i128(g);
  }
  if (nn >= kMin64 && nn <= kMax64 && dd <= kMax64) {
    num_ = static_cast<std::int64_t>(nn);
    den_ = static_cast<std::int64_t>(dd);
  } else {
    set_from(mpq_class(mpz_from(nn), mpz_from(dd)));
  }
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  set_from(c);
}

void Rational::set_from(const mpq_class& q) {
  if (fits(q.get_num()) && fits(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(q);
  }
}

struct RationalAccess {
  static Rational reduced(std::int64_t n, std::int64_t d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }
  static Rational make(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    u128 g = gcd128(n < 0 ? u128(-n) : u128(n), u128(d));
    if (g > 1) {
      n /= i128(g);
      d /= i128(g);
    }
    if (n >= kMin64 && n <= kMax64 && d <= kMax64) {
      return reduced(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }
    return Rational(mpq_class(mpz_from(n), mpz_from(d)));
  }
};

namespace {
using Access = RationalAccess;
}  // namespace

Rational Rational::parse(std::string_view s) {
  if (s.empty()) throw Error(ErrorKind::kParse, "empty rational");
  std::size_t slash = s.find('/');
  auto valid_int = [](std::string_view t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string_view ns = s.substr(0, slash);
  std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_int(ns, true) || !valid_int(ds, false))
    throw Error(ErrorKind::kParse, "malformed rational \"" + std::string(s) + "\"");
  std::string nstr(ns.front() == '+' ? ns.substr(1) : ns);
  mpz_class n(nstr, 10), d(std::string(ds), 10);
  if (d == 0) throw Error(ErrorKind::kParse, "zero denominator in \"" + std::string(s) + "\"");
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

mpz_class Rational::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

Rational Rational::floor() const {
  if (big_) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return Rational(mpq_class(f));
  }
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return Rational(static_cast<long long>(q));
}

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  return Access::make(-i128(num_), den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return Access::make(i128(a.num_) + b.num_, a.den_);
    return Access::make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return Access::make(i128(a.num_) - b.num_, a.den_);
    return Access::make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return Access::make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_) return Access::make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
}

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // big values never fit the inline form
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = i128(a.num_) * b.den_, r = i128(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::size_t Rational::hash() const noexcept {
  if (big_) {
    return std::hash<std::string>{}(big_->get_str());
  }
  std::size_t h = std::hash<std::int64_t>{}(num_);
  return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace dff
