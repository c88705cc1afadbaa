#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "isg/instance.hpp"
#include "isg/profile.hpp"
#include "isg/rational.hpp"

namespace isg {

struct Evaluation {
    std::vector<std::size_t> deployment;  // 1-based, by global service index
    std::vector<std::size_t> activation;  // 1-based, by global service index
    std::vector<Rational> utilities;      // by player
    Rational welfare{0};
    // Per player: services with an own predecessor deployed after them.
    std::vector<std::size_t> sigma;
    bool conflict_free = true;
};

// Throws Error(ProfileMismatch) if the profile does not fit the instance.
Evaluation evaluate(const Instance& instance, const Profile& profile);

// a(v) = max deployment time over v and its closed in-neighbourhood.
std::vector<std::size_t> activation_times(const Instance& instance,
                                          std::span<const std::size_t> deployment);

// Utility of `player` in units of 1 / instance.reward_scale(). No validation.
std::int64_t scaled_utility(const Instance& instance, std::span<const std::size_t> deployment,
                            std::size_t player);
std::int64_t scaled_welfare(const Instance& instance, std::span<const std::size_t> deployment);

inline Rational unscale(const Instance& instance, std::int64_t scaled) {
    return Rational(scaled, instance.reward_scale());
}

}  // namespace isg
