#include "isg/best_response.hpp"

#include <algorithm>
#include <limits>

#include "isg/error.hpp"
#include "isg/evaluate.hpp"

namespace isg {
namespace {

// Own closed successors of each local service, as local indices.
std::vector<std::vector<std::size_t>> own_successors(const Instance& instance, std::size_t player) {
    const std::size_t q = instance.services_per_player();
    std::vector<std::vector<std::size_t>> succ(q);
    for (std::size_t j = 0; j < q; ++j) {
        for (std::size_t w : instance.successors(player * q + j)) {
            if (instance.owner(w) == player) succ[j].push_back(w - player * q);
        }
    }
    return succ;
}

std::vector<std::size_t> own_in_degree(const std::vector<std::vector<std::size_t>>& succ) {
    std::vector<std::size_t> deg(succ.size(), 0);
    for (const auto& s : succ) {
        for (std::size_t w : s) ++deg[w];
    }
    return deg;
}

std::int64_t accrual(std::size_t q, std::size_t slot, std::size_t eta) {
    return static_cast<std::int64_t>(q + 1 - std::max(slot, eta));
}

class LinearExtensionSearch {
public:
    LinearExtensionSearch(const Instance& instance, const EtaBounds& eta)
        : eta_(eta),
          q_(instance.services_per_player()),
          succ_(own_successors(instance, eta.player)),
          in_degree_(own_in_degree(succ_)),
          placed_(q_, false) {
        for (std::size_t j = 0; j < q_; ++j) weight_.push_back(instance.scaled_reward(eta.player * q_ + j));
    }

    void run() {
        order_.reserve(q_);
        dfs(0);
    }

    std::vector<std::size_t> best_order;
    std::int64_t best_value = -1;

private:
    std::int64_t bound(std::size_t next_slot) const {
        std::int64_t b = 0;
        for (std::size_t j = 0; j < q_; ++j) {
            if (!placed_[j]) b += weight_[j] * accrual(q_, next_slot, eta_.eta[j]);
        }
        return b;
    }

    void dfs(std::int64_t value) {
        const std::size_t slot = order_.size() + 1;
        if (order_.size() == q_) {
            if (value > best_value) {
                best_value = value;
                best_order = order_;
            }
            return;
        }
        if (value + bound(slot) <= best_value) return;
        for (std::size_t j = 0; j < q_; ++j) {
            if (placed_[j] || in_degree_[j] != 0) continue;
            placed_[j] = true;
            order_.push_back(j);
            for (std::size_t w : succ_[j]) --in_degree_[w];
            dfs(value + weight_[j] * accrual(q_, slot, eta_.eta[j]));
            for (std::size_t w : succ_[j]) ++in_degree_[w];
            order_.pop_back();
            placed_[j] = false;
        }
    }

    const EtaBounds& eta_;
    std::size_t q_;
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<std::size_t> in_degree_;
    std::vector<bool> placed_;
    std::vector<std::int64_t> weight_;
    std::vector<std::size_t> order_;
};

BestResponseResult make_result(const Instance& instance, std::size_t player,
                               std::vector<std::size_t> schedule, std::int64_t scaled,
                               BestResponseMethod method) {
    BestResponseResult r;
    r.player = player;
    r.schedule = std::move(schedule);
    r.scaled_value = scaled;
    r.value = unscale(instance, scaled);
    r.method = method;
    return r;
}

void check_player(const Instance& instance, std::size_t player) {
    if (player >= instance.player_count()) {
        throw Error(ErrorCode::UnknownPlayer, "player index " + std::to_string(player) + " out of range");
    }
}

}  // namespace

std::string_view to_string(BestResponseMethod method) {
    switch (method) {
        case BestResponseMethod::GreedyUniform: return "greedy-uniform";
        case BestResponseMethod::Exact: return "exact";
        case BestResponseMethod::Oracle: return "oracle";
    }
    return "unknown";
}

EtaBounds compute_eta(const Instance& instance, std::span<const std::size_t> deployment,
                      std::size_t player) {
    check_player(instance, player);
    const std::size_t q = instance.services_per_player();
    EtaBounds out{player, std::vector<std::size_t>(q, 0)};
    for (std::size_t j = 0; j < q; ++j) {
        for (std::size_t u : instance.predecessors(player * q + j)) {
            if (instance.owner(u) != player) out.eta[j] = std::max(out.eta[j], deployment[u]);
        }
    }
    return out;
}

EtaBounds compute_eta(const Instance& instance, const Profile& others, std::size_t player) {
    check_player(instance, player);
    check_profile(instance, others, player);
    const auto deployment = deployment_times(instance, others, player);
    return compute_eta(instance, deployment, player);
}

std::int64_t scaled_response_value(const Instance& instance, const EtaBounds& eta,
                                   std::span<const std::size_t> schedule) {
    const std::size_t q = instance.services_per_player();
    const std::size_t base = eta.player * q;
    std::vector<std::size_t> slot(q, 0);
    for (std::size_t t = 0; t < schedule.size(); ++t) slot[schedule[t]] = t + 1;
    std::int64_t total = 0;
    for (std::size_t j = 0; j < q; ++j) {
        std::size_t a = std::max(slot[j], eta.eta[j]);
        for (std::size_t u : instance.predecessors(base + j)) {
            if (instance.owner(u) == eta.player) a = std::max(a, slot[u - base]);
        }
        total += instance.scaled_reward(base + j) * static_cast<std::int64_t>(q + 1 - a);
    }
    return total;
}

BestResponseResult greedy_best_response(const Instance& instance, const EtaBounds& eta,
                                        Tiebreak tiebreak) {
    if (!instance.uniform_rewards()) {
        throw Error(ErrorCode::NotUniform, "greedy best response requires uniform rewards");
    }
    const std::size_t q = instance.services_per_player();
    const auto succ = own_successors(instance, eta.player);
    auto in_degree = own_in_degree(succ);
    std::vector<bool> placed(q, false);
    std::vector<std::size_t> order;
    std::int64_t value = 0;

    for (std::size_t slot = 1; slot <= q; ++slot) {
        std::size_t pick = q;
        for (std::size_t step = 0; step < q; ++step) {
            const std::size_t j = tiebreak == Tiebreak::LowestIndex ? step : q - 1 - step;
            if (placed[j] || in_degree[j] != 0) continue;
            if (pick == q || eta.eta[j] < eta.eta[pick]) pick = j;
        }
        placed[pick] = true;
        order.push_back(pick);
        for (std::size_t w : succ[pick]) --in_degree[w];
        value += instance.scaled_reward(eta.player * q + pick) * accrual(q, slot, eta.eta[pick]);
    }
    return make_result(instance, eta.player, std::move(order), value,
                       BestResponseMethod::GreedyUniform);
}

BestResponseResult greedy_best_response(const Instance& instance, const Profile& others,
                                        std::size_t player, Tiebreak tiebreak) {
    return greedy_best_response(instance, compute_eta(instance, others, player), tiebreak);
}

BestResponseResult exact_best_response(const Instance& instance, const EtaBounds& eta,
                                       const SearchLimits& limits) {
    require_within_cap(factorial_saturating(instance.services_per_player()), limits,
                       "exact best response");
    LinearExtensionSearch search(instance, eta);
    search.run();
    return make_result(instance, eta.player, std::move(search.best_order),
                       std::max<std::int64_t>(search.best_value, 0), BestResponseMethod::Exact);
}

BestResponseResult exact_best_response(const Instance& instance, const Profile& others,
                                       std::size_t player, const SearchLimits& limits) {
    return exact_best_response(instance, compute_eta(instance, others, player), limits);
}

BestResponseResult brute_force_best_response(const Instance& instance, const Profile& others,
                                             std::size_t player, const SearchLimits& limits) {
    check_player(instance, player);
    check_profile(instance, others, player);
    const std::size_t q = instance.services_per_player();
    require_within_cap(factorial_saturating(q), limits, "brute-force best response");

    auto deployment = deployment_times(instance, others, player);
    std::vector<std::size_t> perm(q);
    for (std::size_t j = 0; j < q; ++j) perm[j] = j;
    std::vector<std::size_t> best;
    std::int64_t best_value = -1;
    do {
        for (std::size_t t = 0; t < q; ++t) deployment[player * q + perm[t]] = t + 1;
        const std::int64_t v = scaled_utility(instance, deployment, player);
        if (v > best_value) {
            best_value = v;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return make_result(instance, player, std::move(best), std::max<std::int64_t>(best_value, 0),
                       BestResponseMethod::Oracle);
}

BestResponseResult best_response(const Instance& instance, const EtaBounds& eta,
                                 const SearchLimits& limits, Tiebreak tiebreak) {
    if (instance.uniform_rewards()) return greedy_best_response(instance, eta, tiebreak);
    return exact_best_response(instance, eta, limits);
}

BestResponseResult best_response(const Instance& instance, const Profile& others,
                                 std::size_t player, const SearchLimits& limits, Tiebreak tiebreak) {
    return best_response(instance, compute_eta(instance, others, player), limits, tiebreak);
}

BestResponseCheck is_best_response(const Instance& instance, const Profile& profile,
                                   std::size_t player, const SearchLimits& limits) {
    check_player(instance, player);
    check_profile(instance, profile);
    const auto deployment = deployment_times(instance, profile);
    const auto eta = compute_eta(instance, deployment, player);
    const std::int64_t current = scaled_utility(instance, deployment, player);
    const std::int64_t best = best_response(instance, eta, limits).scaled_value;

    BestResponseCheck check;
    check.current = unscale(instance, current);
    check.best = unscale(instance, best);
    check.gap = unscale(instance, best - current);
    check.is_best = best == current;
    return check;
}

}  // namespace isg
