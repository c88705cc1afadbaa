#pragma once

#include <string_view>

#include "isg/instance.hpp"
#include "isg/profile.hpp"
#include "isg/rational.hpp"
#include "isg/search.hpp"

namespace isg {

enum class WelfareMethod { BranchAndBound, Oracle, SinglePlayer };

std::string_view to_string(WelfareMethod method);

struct WelfareResult {
    Profile profile;
    Rational value{0};
    WelfareMethod method = WelfareMethod::BranchAndBound;
    bool proof_of_optimality = false;
};

/// Exact welfare maximisation by depth-first branch and bound.
///
/// The tree fixes time steps in order; within a step, players choose their
/// service in index order. A node's bound lets every undecided service activate
/// at the earliest step its owner and its predecessors' owners can still reach,
/// which never underestimates. Throws SizeGuardExceeded when (q!)^k exceeds the cap.
WelfareResult maximize_welfare_exact(const Instance& instance, const SearchLimits& limits = {});

// Single-player instances: the greedy order for uniform rewards, otherwise the
// best linear extension of the dependency order (the optimum is conflict-free).
// Throws InvalidParams unless the instance has exactly one player.
WelfareResult maximize_welfare_single_player(const Instance& instance,
                                             const SearchLimits& limits = {});

// Exhaustive scan; the first optimum in lexicographic profile order wins.
WelfareResult brute_force_welfare(const Instance& instance, const SearchLimits& limits = {});

inline bool meets_threshold(const WelfareResult& result, const Rational& threshold) {
    return result.value >= threshold;
}

}  // namespace isg
