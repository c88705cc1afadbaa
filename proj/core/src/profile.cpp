#include "isg/profile.hpp"

#include <numeric>

#include "isg/error.hpp"

namespace isg {

Profile Profile::identity(const Instance& instance) {
    std::vector<std::size_t> order(instance.services_per_player());
    std::iota(order.begin(), order.end(), 0);
    return Profile(std::vector<std::vector<std::size_t>>(instance.player_count(), order));
}

Profile Profile::with_order(std::size_t player, std::vector<std::size_t> order) const {
    Profile copy = *this;
    copy.orders_.at(player) = std::move(order);
    return copy;
}

std::string Profile::key() const {
    std::string out;
    for (std::size_t p = 0; p < orders_.size(); ++p) {
        if (p > 0) out += '|';
        for (std::size_t t = 0; t < orders_[p].size(); ++t) {
            if (t > 0) out += ',';
            out += std::to_string(orders_[p][t]);
        }
    }
    return out;
}

void check_profile(const Instance& instance, const Profile& profile,
                   std::optional<std::size_t> skip_player) {
    const std::size_t q = instance.services_per_player();
    if (profile.player_count() != instance.player_count()) {
        throw Error(ErrorCode::ProfileMismatch,
                    "profile has " + std::to_string(profile.player_count()) + " players, instance has " +
                        std::to_string(instance.player_count()));
    }
    std::vector<bool> seen(q);
    for (std::size_t p = 0; p < profile.player_count(); ++p) {
        if (skip_player && *skip_player == p) continue;
        const auto order = profile.order(p);
        if (order.size() != q) {
            throw Error(ErrorCode::ProfileMismatch,
                        "schedule of player '" + instance.player_name(p) + "' has " +
                            std::to_string(order.size()) + " entries, expected " + std::to_string(q));
        }
        std::fill(seen.begin(), seen.end(), false);
        for (std::size_t local : order) {
            if (local >= q || seen[local]) {
                throw Error(ErrorCode::ProfileMismatch,
                            "schedule of player '" + instance.player_name(p) + "' is not a permutation");
            }
            seen[local] = true;
        }
    }
}

std::vector<std::size_t> deployment_times(const Instance& instance, const Profile& profile,
                                          std::optional<std::size_t> skip_player) {
    std::vector<std::size_t> times(instance.service_count(), 0);
    for (std::size_t p = 0; p < profile.player_count(); ++p) {
        if (skip_player && *skip_player == p) continue;
        const auto order = profile.order(p);
        for (std::size_t t = 0; t < order.size(); ++t) {
            times[instance.index_of({p, order[t]})] = t + 1;
        }
    }
    return times;
}

}  // namespace isg
