#include "ordmatch/rational.h"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace ordmatch {
namespace {

// Inline values keep |num|, den below 2^62 so that any product of two of
// them, and any sum of two such products, fits in a signed 128-bit integer.
constexpr std::int64_t kSmallLimit = std::int64_t{1} << 62;

using u128 = unsigned __int128;
using i128 = __int128;

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

mpz_class to_mpz(i128 v) {
  const bool negative = v < 0;
  u128 mag = uabs(v);
  mpz_class hi;
  mpz_class lo;
  mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class out = (hi << 64) + lo;
  return negative ? mpz_class(-out) : out;
}

bool fits_small(const mpz_class& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) return false;
  const long v = mpz_get_si(z.get_mpz_t());
  return v < kSmallLimit && v > -kSmallLimit;
}

}  // namespace

Rational::Rational(std::int64_t value) {
  if (value < kSmallLimit && value > -kSmallLimit) {
    num_ = value;
  } else {
    assign_mpq(mpq_class(to_mpz(value), 1));
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    set_small(-static_cast<i128>(num), -static_cast<i128>(den));
  } else {
    set_small(num, den);
  }
}

Rational::Rational(const mpq_class& value) { assign_mpq(value); }

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = std::make_unique<mpq_class>(*other.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::set_small(i128 num, i128 den) {
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  const u128 g = gcd128(uabs(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (num < kSmallLimit && num > -kSmallLimit && den < kSmallLimit) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  big_ = std::make_unique<mpq_class>(to_mpz(num), to_mpz(den));
}

void Rational::assign_mpq(mpq_class value) {
  value.canonicalize();
  if (fits_small(value.get_num()) && fits_small(value.get_den())) {
    num_ = mpz_get_si(value.get_num_mpz_t());
    den_ = mpz_get_si(value.get_den_mpz_t());
    big_.reset();
    return;
  }
  if (big_) {
    *big_ = std::move(value);
  } else {
    big_ = std::make_unique<mpq_class>(std::move(value));
  }
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class out(to_mpz(num_), to_mpz(den_));
  out.canonicalize();
  return out;
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&]() {
    return std::invalid_argument("not a rational: \"" + std::string(text) + "\"");
  };
  if (text.empty()) throw bad();
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string num_text(text.substr(0, slash));
  std::string den_text = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!is_int(num_text) || !is_int(den_text) || den_text[0] == '-' || den_text[0] == '+') {
    throw bad();
  }
  if (num_text[0] == '+') num_text.erase(0, 1);
  mpz_class num(num_text, 10);
  mpz_class den(den_text, 10);
  if (den == 0) throw bad();
  return Rational(mpq_class(num, den));
}

std::string Rational::str() const {
  if (big_) {
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  }
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

bool Rational::is_zero() const { return !big_ && num_ == 0; }

bool Rational::is_integer() const {
  if (big_) return big_->get_den() == 1;
  return den_ == 1;
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    const auto g = static_cast<std::int64_t>(gcd64(static_cast<std::uint64_t>(den_),
                                                   static_cast<std::uint64_t>(rhs.den_)));
    const i128 num = static_cast<i128>(num_) * (rhs.den_ / g) +
                     static_cast<i128>(rhs.num_) * (den_ / g);
    const i128 den = static_cast<i128>(den_ / g) * rhs.den_;
    set_small(num, den);
    return *this;
  }
  assign_mpq(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    const auto g = static_cast<std::int64_t>(gcd64(static_cast<std::uint64_t>(den_),
                                                   static_cast<std::uint64_t>(rhs.den_)));
    const i128 num = static_cast<i128>(num_) * (rhs.den_ / g) -
                     static_cast<i128>(rhs.num_) * (den_ / g);
    const i128 den = static_cast<i128>(den_ / g) * rhs.den_;
    set_small(num, den);
    return *this;
  }
  assign_mpq(to_mpq() - rhs.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (!big_ && !rhs.big_) {
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    set_small(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
    return *this;
  }
  assign_mpq(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!big_ && !rhs.big_) {
    i128 num = static_cast<i128>(num_) * rhs.den_;
    i128 den = static_cast<i128>(den_) * rhs.num_;
    if (den < 0) {
      num = -num;
      den = -den;
    }
    set_small(num, den);
    return *this;
  }
  assign_mpq(to_mpq() / rhs.to_mpq());
  return *this;
}

Rational Rational::operator-() const {
  Rational out(*this);
  if (out.big_) {
    *out.big_ = -*out.big_;
  } else {
    out.num_ = -out.num_;
  }
  return out;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a small value never equals a big one.
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const i128 lhs = static_cast<i128>(a.num_) * b.den_;
    const i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow2(int e) {
  if (e >= 0) {
    if (e < 62) return Rational(std::int64_t{1} << e);
    mpz_class z = 1;
    z <<= e;
    return Rational(mpq_class(z));
  }
  if (-e < 62) return Rational(1, std::int64_t{1} << -e);
  mpz_class z = 1;
  z <<= -e;
  return Rational(mpq_class(mpz_class(1), z));
}

}  // namespace ordmatch
