#include "isg/welfare.hpp"

#include <algorithm>

#include "isg/best_response.hpp"
#include "isg/error.hpp"
#include "isg/evaluate.hpp"

namespace isg {
namespace {

class WelfareSearch {
public:
    explicit WelfareSearch(const Instance& instance)
        : instance_(instance),
          k_(instance.player_count()),
          q_(instance.services_per_player()),
          n_(instance.service_count()),
          pos_(n_, 0),
          orders_(k_) {}

    void run() { dfs(0); }

    std::vector<std::vector<std::size_t>> best_orders;
    std::int64_t best_value = -1;

private:
    // Upper bound on the welfare of any completion. Exact once every service is placed.
    std::int64_t bound() const {
        std::int64_t total = 0;
        for (std::size_t v = 0; v < n_; ++v) {
            std::size_t earliest = earliest_deployment(v);
            for (std::size_t u : instance_.predecessors(v)) earliest = std::max(earliest, earliest_deployment(u));
            total += instance_.scaled_reward(v) * static_cast<std::int64_t>(q_ + 1 - earliest);
        }
        return total;
    }

    std::size_t earliest_deployment(std::size_t v) const {
        return pos_[v] != 0 ? pos_[v] : orders_[instance_.owner(v)].size() + 1;
    }

    void dfs(std::size_t depth) {
        if (depth == k_ * q_) {
            const std::int64_t value = bound();
            if (value > best_value) {
                best_value = value;
                best_orders = orders_;
            }
            return;
        }
        if (bound() <= best_value) return;
        const std::size_t player = depth % k_;
        const std::size_t slot = depth / k_ + 1;
        for (std::size_t j = 0; j < q_; ++j) {
            const std::size_t v = player * q_ + j;
            if (pos_[v] != 0) continue;
            pos_[v] = slot;
            orders_[player].push_back(j);
            dfs(depth + 1);
            orders_[player].pop_back();
            pos_[v] = 0;
        }
    }

    const Instance& instance_;
    std::size_t k_;
    std::size_t q_;
    std::size_t n_;
    std::vector<std::size_t> pos_;
    std::vector<std::vector<std::size_t>> orders_;
};

WelfareResult make_result(const Instance& instance, Profile profile, WelfareMethod method) {
    WelfareResult r;
    const auto deployment = deployment_times(instance, profile);
    r.value = unscale(instance, scaled_welfare(instance, deployment));
    r.profile = std::move(profile);
    r.method = method;
    r.proof_of_optimality = true;
    return r;
}

}  // namespace

std::string_view to_string(WelfareMethod method) {
    switch (method) {
        case WelfareMethod::BranchAndBound: return "bnb";
        case WelfareMethod::Oracle: return "oracle";
        case WelfareMethod::SinglePlayer: return "single-player";
    }
    return "unknown";
}

WelfareResult maximize_welfare_exact(const Instance& instance, const SearchLimits& limits) {
    require_within_cap(profile_space_size(instance.services_per_player(), instance.player_count()),
                       limits, "welfare branch and bound");
    if (instance.service_count() == 0) {
        return make_result(instance, Profile::identity(instance), WelfareMethod::BranchAndBound);
    }
    WelfareSearch search(instance);
    search.run();
    return make_result(instance, Profile(std::move(search.best_orders)), WelfareMethod::BranchAndBound);
}

WelfareResult maximize_welfare_single_player(const Instance& instance, const SearchLimits& limits) {
    if (instance.player_count() != 1) {
        throw Error(ErrorCode::InvalidParams, "single-player welfare needs exactly one player, got " +
                                                  std::to_string(instance.player_count()));
    }
    const EtaBounds free{0, std::vector<std::size_t>(instance.services_per_player(), 0)};
    BestResponseResult br = instance.uniform_rewards() ? greedy_best_response(instance, free)
                                                       : exact_best_response(instance, free, limits);
    return make_result(instance, Profile({std::move(br.schedule)}), WelfareMethod::SinglePlayer);
}

WelfareResult brute_force_welfare(const Instance& instance, const SearchLimits& limits) {
    const std::size_t k = instance.player_count();
    const std::size_t q = instance.services_per_player();
    require_within_cap(profile_space_size(q, k), limits, "brute-force welfare");

    const auto perms = all_permutations(q);
    std::vector<std::size_t> digits(k, 0);
    std::vector<std::size_t> deployment(instance.service_count(), 0);
    std::vector<std::size_t> best_digits = digits;
    std::int64_t best_value = -1;
    while (true) {
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t t = 0; t < q; ++t) deployment[p * q + perms[digits[p]][t]] = t + 1;
        }
        const std::int64_t value = scaled_welfare(instance, deployment);
        if (value > best_value) {
            best_value = value;
            best_digits = digits;
        }
        // Odometer with player 0 most significant.
        std::size_t p = k;
        while (p > 0 && ++digits[p - 1] == perms.size()) {
            digits[p - 1] = 0;
            --p;
        }
        if (p == 0) break;
    }
    std::vector<std::vector<std::size_t>> orders;
    for (std::size_t d : best_digits) orders.push_back(perms[d]);
    return make_result(instance, Profile(std::move(orders)), WelfareMethod::Oracle);
}

}  // namespace isg
