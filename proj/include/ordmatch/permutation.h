#ifndef ORDMATCH_PERMUTATION_H_
#define ORDMATCH_PERMUTATION_H_

#include <cstdint>
#include <vector>

namespace ordmatch {

// n! as a 64-bit integer; n <= 20.
std::uint64_t factorial(int n);

// The rank-th permutation of 0..n-1 in lexicographic order.
std::vector<int> unrank_permutation(int n, std::uint64_t rank);

// All n! permutations of 0..n-1 in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);

// Inverse permutation.
std::vector<int> inverse(const std::vector<int>& perm);

}  // namespace ordmatch

#endif  // ORDMATCH_PERMUTATION_H_
