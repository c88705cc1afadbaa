#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "isg/instance.hpp"
#include "isg/profile.hpp"
#include "isg/rational.hpp"
#include "isg/search.hpp"

namespace isg {

/// Lower bounds on activation that the opponents' fixed schedules impose on one
/// player's services: eta[j] is the latest deployment time among external
/// (closed) predecessors of local service j, or 0 if there are none.
///
/// A player's utility against fixed opponents depends on the opponents only
/// through these bounds, so every best-response routine except the brute-force
/// oracle works from them.
struct EtaBounds {
    std::size_t player = 0;
    std::vector<std::size_t> eta;
};

enum class BestResponseMethod { GreedyUniform, Exact, Oracle };

std::string_view to_string(BestResponseMethod method);

struct BestResponseResult {
    std::size_t player = 0;
    std::vector<std::size_t> schedule;  // local indices in deployment order
    Rational value{0};
    std::int64_t scaled_value = 0;
    BestResponseMethod method = BestResponseMethod::Exact;
};

struct BestResponseCheck {
    bool is_best = false;
    Rational gap{0};
    Rational current{0};
    Rational best{0};
};

// `others` must hold a full permutation for every player except `player`,
// whose entry is ignored. Throws ProfileMismatch.
EtaBounds compute_eta(const Instance& instance, const Profile& others, std::size_t player);
// Same, from deployment times; entries of `player` are ignored.
EtaBounds compute_eta(const Instance& instance, std::span<const std::size_t> deployment,
                      std::size_t player);

// Utility (scaled) of deploying `schedule` against the given bounds.
std::int64_t scaled_response_value(const Instance& instance, const EtaBounds& eta,
                                   std::span<const std::size_t> schedule);

// Polynomial greedy for uniform rewards: each step deploys, among services with no
// undeployed own predecessor, one with minimum eta. Throws NotUniform.
BestResponseResult greedy_best_response(const Instance& instance, const EtaBounds& eta,
                                        Tiebreak tiebreak = Tiebreak::LowestIndex);
BestResponseResult greedy_best_response(const Instance& instance, const Profile& others,
                                        std::size_t player,
                                        Tiebreak tiebreak = Tiebreak::LowestIndex);

// Depth-first branch and bound over the linear extensions of the player's own
// dependency subgraph. Global optimum for any rewards. Throws SizeGuardExceeded
// when q! exceeds the cap.
BestResponseResult exact_best_response(const Instance& instance, const EtaBounds& eta,
                                       const SearchLimits& limits = {});
BestResponseResult exact_best_response(const Instance& instance, const Profile& others,
                                       std::size_t player, const SearchLimits& limits = {});

// Exhaustive over all q! orders, scoring each with the full activation semantics.
// Returns the lexicographically smallest optimal order.
BestResponseResult brute_force_best_response(const Instance& instance, const Profile& others,
                                             std::size_t player,
                                             const SearchLimits& limits = {});

// Greedy when rewards are uniform, exact otherwise.
BestResponseResult best_response(const Instance& instance, const EtaBounds& eta,
                                 const SearchLimits& limits = {},
                                 Tiebreak tiebreak = Tiebreak::LowestIndex);
BestResponseResult best_response(const Instance& instance, const Profile& others,
                                 std::size_t player, const SearchLimits& limits = {},
                                 Tiebreak tiebreak = Tiebreak::LowestIndex);

BestResponseCheck is_best_response(const Instance& instance, const Profile& profile,
                                   std::size_t player, const SearchLimits& limits = {});

}  // namespace isg
