#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "isg/instance.hpp"

namespace isg {

enum class RewardMode { Uniform, Range };

struct RandomInstanceParams {
    std::size_t players = 2;
    std::size_t services_per_player = 3;
    RewardMode reward_mode = RewardMode::Uniform;
    std::int64_t reward_lo = 50;
    std::int64_t reward_hi = 100;
    double edge_prob = 0.5;
    std::size_t max_children = 2;
    std::uint64_t seed = 0;
};

inline constexpr std::string_view kRandomEngineId = "mt19937_64";

/// Seeded random instance.
///
/// All services are shuffled into one global order. Every position i then draws
/// a child count c uniformly from {0..max_children} and, for each offset
/// j = 1..c, adds the edge (i -> i+j) with probability edge_prob when i+j is in
/// range. Edges only point forward in the order, so the graph is acyclic.
/// Range rewards are integers drawn uniformly from [reward_lo, reward_hi].
///
/// Draw order: shuffle, rewards by global index, then edges. All draws come from
/// std::mt19937_64 seeded with `seed` through fixed reductions (no standard
/// distributions), so output is identical across platforms.
///
/// Players are named P1..Pk, services s<player>_<index>, both 1-based.
/// Throws InvalidParams.
Instance random_instance(const RandomInstanceParams& params);

}  // namespace isg
