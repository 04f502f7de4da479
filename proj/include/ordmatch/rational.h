// Exact rational numbers with an inline 64-bit fast path.
//
// Values whose reduced numerator and denominator fit comfortably in 62 bits
// are stored inline; anything larger is promoted to a GMP rational and
// demoted again as soon as it fits. The representation is canonical, so
// equal values always compare equal and print identically.

#ifndef ORDMATCH_RATIONAL_H_
#define ORDMATCH_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ordmatch {

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT: integers convert implicitly.
  Rational(int value) : Rational(static_cast<std::int64_t>(value)) {}
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& value);

  Rational(const Rational& other);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  // Accepts "a", "a/b" and a leading minus sign. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  // Always "num/den" with den > 0, e.g. "3/1", "-1/3".
  std::string str() const;
  double to_double() const;
  mpq_class to_mpq() const;

  bool is_small() const { return big_ == nullptr; }
  bool is_zero() const;
  bool is_integer() const;
  int sign() const;

  // Valid only for is_small() values.
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void assign_mpq(mpq_class value);  // canonicalizes and demotes.
  void set_small(__int128 num, __int128 den);  // den > 0, may promote.

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// 2^e as an exact rational (e may be negative).
Rational pow2(int e);

}  // namespace ordmatch

#endif  // ORDMATCH_RATIONAL_H_
