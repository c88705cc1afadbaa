#include "isg/generator.hpp"

#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "isg/error.hpp"

namespace isg {
namespace {

// Uniform integer in [0, bound) by rejection, independent of the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

bool bernoulli(std::mt19937_64& rng, double p) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u < p;
}

}  // namespace

Instance random_instance(const RandomInstanceParams& params) {
    if (params.players < 1 || params.services_per_player < 1) {
        throw Error(ErrorCode::InvalidParams, "need at least one player and one service per player");
    }
    if (params.reward_mode == RewardMode::Range &&
        (params.reward_lo < 0 || params.reward_lo > params.reward_hi)) {
        throw Error(ErrorCode::InvalidParams, "reward range must satisfy 0 <= lo <= hi");
    }
    if (!(params.edge_prob >= 0.0 && params.edge_prob <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "edge probability must lie in [0, 1]");
    }

    std::mt19937_64 rng(params.seed);
    const std::size_t k = params.players;
    const std::size_t q = params.services_per_player;
    const std::size_t n = k * q;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[uniform_below(rng, i)]);
    }

    RawInstance raw;
    auto label = [q](std::size_t v) {
        return "s" + std::to_string(v / q + 1) + "_" + std::to_string(v % q + 1);
    };
    for (std::size_t p = 0; p < k; ++p) {
        RawPlayer player{"P" + std::to_string(p + 1), {}};
        for (std::size_t j = 0; j < q; ++j) {
            Rational reward{1};
            if (params.reward_mode == RewardMode::Range) {
                const auto span = static_cast<std::uint64_t>(params.reward_hi - params.reward_lo) + 1;
                reward = Rational(params.reward_lo + static_cast<std::int64_t>(uniform_below(rng, span)));
            }
            player.services.push_back({label(p * q + j), reward});
        }
        raw.players.push_back(std::move(player));
    }

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t children = uniform_below(rng, params.max_children + 1);
        for (std::size_t j = 1; j <= children; ++j) {
            if (i + j >= n) continue;
            if (bernoulli(rng, params.edge_prob)) raw.edges.emplace_back(label(order[i]), label(order[i + j]));
        }
    }
    return Instance::validate(raw);
}

}  // namespace isg
