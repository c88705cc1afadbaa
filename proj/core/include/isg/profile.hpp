#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isg/instance.hpp"

namespace isg {

/// One permutation per player. Entry `order(i)[t]` is the local index of the
/// service player i deploys at time step t + 1.
class Profile {
public:
    Profile() = default;
    explicit Profile(std::vector<std::vector<std::size_t>> orders) : orders_(std::move(orders)) {}

    // Every player deploys services in local index order.
    static Profile identity(const Instance& instance);

    std::size_t player_count() const { return orders_.size(); }
    std::span<const std::size_t> order(std::size_t player) const { return orders_[player]; }
    const std::vector<std::vector<std::size_t>>& orders() const { return orders_; }

    Profile with_order(std::size_t player, std::vector<std::size_t> order) const;

    // Stable textual key, e.g. "0,1,2|2,0,1".
    std::string key() const;

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    std::vector<std::vector<std::size_t>> orders_;
};

// Throws Error(ProfileMismatch) unless every player's order is a permutation of
// that player's services. The order of `skip_player` is not inspected.
void check_profile(const Instance& instance, const Profile& profile,
                   std::optional<std::size_t> skip_player = std::nullopt);

// 1-based deployment time of every service, by global index. Entries for
// `skip_player` are left at 0.
std::vector<std::size_t> deployment_times(const Instance& instance, const Profile& profile,
                                          std::optional<std::size_t> skip_player = std::nullopt);

}  // namespace isg
