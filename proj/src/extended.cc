#include "ordmatch/extended.h"

#include <limits>
#include <stdexcept>

#include "ordmatch/errors.h"

namespace ordmatch {

ExtRational ExtRational::ratio(const Rational& num, const Rational& den) {
  if (den.is_zero()) {
    if (num.is_zero()) throw std::domain_error("ratio 0/0 is undefined");
    return infinity();
  }
  return ExtRational(num / den);
}

ExtRational ExtRational::parse(std::string_view text) {
  if (text == "inf") return infinity();
  return ExtRational(Rational::parse(text));
}

const Rational& ExtRational::value() const {
  if (infinite_) throw std::logic_error("value() of an infinite quantity");
  return value_;
}

double ExtRational::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.to_double();
}

}  // namespace ordmatch
