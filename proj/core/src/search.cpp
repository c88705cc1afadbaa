#include "isg/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "isg/error.hpp"

namespace isg {

std::uint64_t factorial_saturating(std::size_t n) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t out = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        if (out > kMax / i) return kMax;
        out *= i;
    }
    return out;
}

std::uint64_t profile_space_size(std::size_t q, std::size_t k) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t per_player = factorial_saturating(q);
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (per_player != 0 && out > kMax / per_player) return kMax;
        out *= per_player;
    }
    return out;
}

void require_within_cap(std::uint64_t size, const SearchLimits& limits, std::string_view what) {
    if (size > limits.cap) {
        throw Error(ErrorCode::SizeGuardExceeded,
                    std::string(what) + ": " + std::to_string(size) + " candidates exceed cap " +
                        std::to_string(limits.cap));
    }
}

std::vector<std::vector<std::size_t>> all_permutations(std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(factorial_saturating(n));
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace isg
