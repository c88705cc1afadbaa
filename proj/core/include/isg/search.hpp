#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace isg {

// Guards for the exponential routines. `cap` bounds the number of candidate
// orders (best responses) or profiles (enumeration, welfare search).
struct SearchLimits {
    std::uint64_t cap = 10'000'000;
    unsigned threads = 1;
};

// Which service wins when several are equally good for a greedy choice.
enum class Tiebreak { LowestIndex, HighestIndex };

// n!, saturating at UINT64_MAX.
std::uint64_t factorial_saturating(std::size_t n);

// (q!)^k, saturating at UINT64_MAX.
std::uint64_t profile_space_size(std::size_t q, std::size_t k);

// Throws Error(SizeGuardExceeded) if size > limits.cap.
void require_within_cap(std::uint64_t size, const SearchLimits& limits, std::string_view what);

// All permutations of 0..n-1 in lexicographic order.
std::vector<std::vector<std::size_t>> all_permutations(std::size_t n);

}  // namespace isg
