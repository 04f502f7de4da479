// A nonnegative rational or +infinity.

#ifndef ORDMATCH_EXTENDED_H_
#define ORDMATCH_EXTENDED_H_

#include <compare>
#include <string>
#include <string_view>

#include "ordmatch/rational.h"

namespace ordmatch {

class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational v) : value_(std::move(v)) {}  // NOLINT: implicit on purpose
  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }
  // Ratio num/den; +infinity when den == 0 < num. 0/0 is rejected.
  static ExtRational ratio(const Rational& num, const Rational& den);
  // "inf" or "num/den".
  static ExtRational parse(std::string_view text);

  bool finite() const { return !infinite_; }
  bool infinite() const { return infinite_; }
  // Throws std::logic_error when infinite.
  const Rational& value() const;

  std::string str() const { return infinite_ ? "inf" : value_.str(); }
  double to_double() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

 private:
  bool infinite_ = false;
  Rational value_;
};

}  // namespace ordmatch

#endif  // ORDMATCH_EXTENDED_H_
