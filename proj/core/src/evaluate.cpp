#include "isg/evaluate.hpp"

#include <algorithm>

namespace isg {
namespace {

std::size_t activation_of(const Instance& instance, std::span<const std::size_t> deployment,
                          std::size_t v) {
    std::size_t a = deployment[v];
    for (std::size_t u : instance.predecessors(v)) a = std::max(a, deployment[u]);
    return a;
}

}  // namespace

std::vector<std::size_t> activation_times(const Instance& instance,
                                          std::span<const std::size_t> deployment) {
    std::vector<std::size_t> activation(instance.service_count());
    for (std::size_t v = 0; v < activation.size(); ++v) {
        activation[v] = activation_of(instance, deployment, v);
    }
    return activation;
}

std::int64_t scaled_utility(const Instance& instance, std::span<const std::size_t> deployment,
                            std::size_t player) {
    const std::size_t q = instance.services_per_player();
    std::int64_t total = 0;
    for (std::size_t j = 0; j < q; ++j) {
        const std::size_t v = player * q + j;
        const auto steps = static_cast<std::int64_t>(q + 1 - activation_of(instance, deployment, v));
        total += steps * instance.scaled_reward(v);
    }
    return total;
}

std::int64_t scaled_welfare(const Instance& instance, std::span<const std::size_t> deployment) {
    std::int64_t total = 0;
    for (std::size_t p = 0; p < instance.player_count(); ++p) {
        total += scaled_utility(instance, deployment, p);
    }
    return total;
}

Evaluation evaluate(const Instance& instance, const Profile& profile) {
    check_profile(instance, profile);
    const std::size_t q = instance.services_per_player();

    Evaluation ev;
    ev.deployment = deployment_times(instance, profile);
    ev.activation = activation_times(instance, ev.deployment);
    ev.utilities.assign(instance.player_count(), Rational{0});
    ev.sigma.assign(instance.player_count(), 0);

    for (std::size_t v = 0; v < instance.service_count(); ++v) {
        const std::size_t p = instance.owner(v);
        ev.utilities[p] += Rational(static_cast<std::int64_t>(q + 1 - ev.activation[v])) *
                           instance.reward(v);
        if (ev.activation[v] != ev.deployment[v]) ev.conflict_free = false;
        const auto preds = instance.predecessors(v);
        const bool violated = std::any_of(preds.begin(), preds.end(), [&](std::size_t u) {
            return instance.owner(u) == p && ev.deployment[u] > ev.deployment[v];
        });
        if (violated) ++ev.sigma[p];
    }
    for (const Rational& u : ev.utilities) ev.welfare += u;
    return ev;
}

}  // namespace isg
