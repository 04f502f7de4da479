#ifndef ORDMATCH_ERRORS_H_
#define ORDMATCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ordmatch {

// Malformed arguments: bad indices, dimension mismatches, non-stochastic
// matrices, non-permutations.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A graph whose shortest-path closure has an infinite distance.
class UnboundedDistance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive routine was asked to run above its size cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace ordmatch

#endif  // ORDMATCH_ERRORS_H_
