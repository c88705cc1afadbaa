#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isg/graph.hpp"
#include "isg/rational.hpp"

namespace isg {

// A service is addressed by its owner and its position in the owner's service list.
struct ServiceId {
    std::size_t player = 0;
    std::size_t local = 0;

    friend auto operator<=>(const ServiceId&, const ServiceId&) = default;
};

struct RawService {
    std::string id;
    Rational reward{1};
};

struct RawPlayer {
    std::string name;
    std::vector<RawService> services;
};

// Unvalidated description of a game, as read from a file or built by a generator.
struct RawInstance {
    std::vector<RawPlayer> players;
    std::vector<std::pair<std::string, std::string>> edges;
};

/// Validated interdependent scheduling game.
///
/// Services are densely indexed as `player * q + local`. The dependency relation
/// is stored both as given and as its transitive closure; every semantic query
/// (predecessors, successors, depends_on) uses the closure.
///
/// Rewards are exact rationals. For the search routines they are also kept as
/// integers scaled by the lcm of all reward denominators, so utilities can be
/// compared without rational arithmetic in inner loops.
class Instance {
public:
    // Throws Error with UnequalServiceCounts, CyclicDependencies, NegativeReward,
    // DuplicateLabel, UnknownEdgeEndpoint, SelfEdge or RewardOverflow.
    static Instance validate(const RawInstance& raw);

    std::size_t player_count() const { return names_.size(); }
    std::size_t services_per_player() const { return q_; }
    std::size_t service_count() const { return labels_.size(); }

    std::size_t index_of(ServiceId id) const { return id.player * q_ + id.local; }
    ServiceId service(std::size_t index) const { return {index / q_, index % q_}; }
    std::size_t owner(std::size_t index) const { return index / q_; }

    const std::string& label(std::size_t index) const { return labels_[index]; }
    const std::string& player_name(std::size_t player) const { return names_[player]; }
    std::optional<std::size_t> find_service(std::string_view label) const;
    std::optional<std::size_t> find_player(std::string_view name) const;

    const Rational& reward(std::size_t index) const { return rewards_[index]; }
    std::int64_t scaled_reward(std::size_t index) const { return scaled_[index]; }
    // Common denominator: reward(v) == scaled_reward(v) / reward_scale().
    std::int64_t reward_scale() const { return scale_; }
    Rational total_reward() const;
    bool uniform_rewards() const { return uniform_; }

    const std::vector<Edge>& base_edges() const { return base_edges_; }
    const std::vector<Edge>& closed_edges() const { return closed_edges_; }

    // Closed in-/out-neighbourhoods, ascending.
    std::span<const std::size_t> predecessors(std::size_t v) const { return preds_[v]; }
    std::span<const std::size_t> successors(std::size_t v) const { return succs_[v]; }
    // True iff (u, v) is in the closure, i.e. v cannot activate before u is deployed.
    bool depends_on(std::size_t v, std::size_t u) const;

    RawInstance to_raw() const;

private:
    Instance() = default;

    std::size_t q_ = 0;
    std::vector<std::string> names_;
    std::vector<std::string> labels_;
    std::vector<Rational> rewards_;
    std::vector<std::int64_t> scaled_;
    std::int64_t scale_ = 1;
    bool uniform_ = true;
    std::vector<Edge> base_edges_;
    std::vector<Edge> closed_edges_;
    std::vector<std::vector<std::size_t>> preds_;
    std::vector<std::vector<std::size_t>> succs_;
    std::vector<std::uint64_t> reach_;  // row-major bit matrix, row = source
    std::size_t reach_words_ = 0;
    std::unordered_map<std::string, std::size_t> label_index_;
    std::unordered_map<std::string, std::size_t> player_index_;
};

inline Instance validate_instance(const RawInstance& raw) { return Instance::validate(raw); }

}  // namespace isg
