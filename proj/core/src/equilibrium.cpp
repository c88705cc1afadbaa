#include "isg/equilibrium.hpp"

#include <algorithm>
#include <limits>
#include <thread>
#include <unordered_map>

#include "isg/error.hpp"
#include "isg/evaluate.hpp"
#include "isg/graph.hpp"

namespace isg {
namespace {

// Orders `members` (global indices of one player) so that own dependencies come
// first, lowest index first among ready services.
std::vector<std::size_t> topological_block(const Instance& instance, std::vector<std::size_t> members) {
    std::sort(members.begin(), members.end());
    std::vector<Edge> local_edges;
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = 0; b < members.size(); ++b) {
            if (a != b && instance.depends_on(members[b], members[a])) local_edges.push_back({a, b});
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t idx : topological_order(local_edges, members.size())) out.push_back(members[idx]);
    return out;
}

// Digits of a profile index in base q!, player 0 most significant.
struct ProfileCodec {
    std::size_t k;
    std::uint64_t base;
    std::vector<std::uint64_t> weight;  // weight[i] = base^(k-1-i)

    ProfileCodec(std::size_t players, std::uint64_t perms) : k(players), base(perms), weight(players, 1) {
        for (std::size_t i = players; i-- > 1;) weight[i - 1] = weight[i] * base;
    }

    std::size_t digit(std::uint64_t index, std::size_t player) const {
        return static_cast<std::size_t>((index / weight[player]) % base);
    }

    // Index over the other k-1 players, order preserved.
    std::uint64_t others_index(std::uint64_t index, std::size_t player) const {
        const std::uint64_t high = index / (weight[player] * base);
        const std::uint64_t low = index % weight[player];
        return high * weight[player] + low;
    }

    // Inverse of others_index with the player's own digit set to 0.
    std::uint64_t from_others(std::uint64_t others, std::size_t player) const {
        const std::uint64_t high = others / weight[player];
        const std::uint64_t low = others % weight[player];
        return high * weight[player] * base + low;
    }
};

void fill_deployment(const Instance& instance, const ProfileCodec& codec,
                     const std::vector<std::vector<std::size_t>>& perms, std::uint64_t index,
                     std::vector<std::size_t>& deployment) {
    const std::size_t q = instance.services_per_player();
    for (std::size_t p = 0; p < codec.k; ++p) {
        const auto& perm = perms[codec.digit(index, p)];
        for (std::size_t t = 0; t < q; ++t) deployment[p * q + perm[t]] = t + 1;
    }
}

Profile decode_profile(const ProfileCodec& codec, const std::vector<std::vector<std::size_t>>& perms,
                       std::uint64_t index) {
    std::vector<std::vector<std::size_t>> orders;
    for (std::size_t p = 0; p < codec.k; ++p) orders.push_back(perms[codec.digit(index, p)]);
    return Profile(std::move(orders));
}

template <class Fn>
void parallel_chunks(std::uint64_t total, unsigned threads, Fn&& fn) {
    threads = std::max(1U, threads);
    if (threads == 1 || total < 2) {
        fn(0, 0, total);
        return;
    }
    const std::uint64_t chunk = (total + threads - 1) / threads;
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t lo = std::min(total, t * chunk);
        const std::uint64_t hi = std::min(total, lo + chunk);
        workers.emplace_back([&fn, t, lo, hi] { fn(t, lo, hi); });
    }
}

struct ChunkResult {
    std::vector<std::uint64_t> equilibria;
    std::int64_t max_welfare = -1;
    std::uint64_t max_index = 0;
    std::vector<std::int64_t> welfare;  // only when a visitor is present
    std::vector<bool> is_pne;
};

}  // namespace

EtaBarState make_eta_bar_state(const Instance& instance,
                               std::vector<std::vector<std::size_t>> scheduled) {
    const std::size_t k = instance.player_count();
    const std::size_t n = instance.service_count();
    EtaBarState state;
    state.scheduled = std::move(scheduled);
    state.scheduled.resize(k);
    state.alpha.assign(k, 0);
    std::vector<std::size_t> pos(n, 0);
    for (std::size_t p = 0; p < k; ++p) {
        state.alpha[p] = state.scheduled[p].size();
        for (std::size_t t = 0; t < state.scheduled[p].size(); ++t) {
            pos[instance.index_of({p, state.scheduled[p][t]})] = t + 1;
        }
    }

    state.activation.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        if (pos[v] == 0) continue;
        std::size_t a = pos[v];
        for (std::size_t u : instance.predecessors(v)) a = std::max(a, pos[u]);
        state.activation[v] = a;
    }

    state.eta_bar.assign(n, 0);
    std::vector<std::size_t> pending(k);
    std::vector<std::size_t> latest(k);
    for (std::size_t v = 0; v < n; ++v) {
        if (pos[v] != 0) {
            state.eta_bar[v] = state.activation[v];
            continue;
        }
        std::fill(pending.begin(), pending.end(), 0);
        std::fill(latest.begin(), latest.end(), 0);
        auto account = [&](std::size_t w) {
            const std::size_t owner = instance.owner(w);
            if (pos[w] == 0) {
                ++pending[owner];
            } else {
                latest[owner] = std::max(latest[owner], state.activation[w]);
            }
        };
        account(v);
        for (std::size_t u : instance.predecessors(v)) account(u);
        std::size_t bound = 0;
        for (std::size_t p = 0; p < k; ++p) {
            bound = std::max(bound, pending[p] == 0 ? latest[p] : state.alpha[p] + pending[p]);
        }
        state.eta_bar[v] = bound;
    }
    return state;
}

Profile construct_pne_uniform(const Instance& instance, std::vector<EtaBarState>* trace) {
    if (!instance.uniform_rewards()) {
        throw Error(ErrorCode::NotUniform, "equilibrium construction requires uniform rewards");
    }
    const std::size_t n = instance.service_count();
    std::vector<std::vector<std::size_t>> scheduled(instance.player_count());
    std::vector<bool> done(n, false);
    std::size_t done_count = 0;

    while (done_count < n) {
        EtaBarState state = make_eta_bar_state(instance, scheduled);

        std::size_t chosen = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            const auto preds = instance.predecessors(v);
            const bool own_pending = std::any_of(preds.begin(), preds.end(), [&](std::size_t u) {
                return !done[u] && instance.owner(u) == instance.owner(v);
            });
            if (own_pending) continue;
            if (chosen == n || state.eta_bar[v] < state.eta_bar[chosen]) chosen = v;
        }

        std::vector<std::vector<std::size_t>> block(instance.player_count());
        block[instance.owner(chosen)].push_back(chosen);
        for (std::size_t u : instance.predecessors(chosen)) {
            if (!done[u]) block[instance.owner(u)].push_back(u);
        }
        for (std::size_t p = 0; p < block.size(); ++p) {
            if (block[p].empty()) continue;
            for (std::size_t v : topological_block(instance, std::move(block[p]))) {
                scheduled[p].push_back(instance.service(v).local);
                done[v] = true;
                ++done_count;
            }
        }
        if (trace) trace->push_back(std::move(state));
    }
    if (trace) trace->push_back(make_eta_bar_state(instance, scheduled));
    return Profile(std::move(scheduled));
}

PneVerification verify_pne(const Instance& instance, const Profile& profile,
                           const SearchLimits& limits) {
    check_profile(instance, profile);
    PneVerification out;
    out.is_pne = true;
    for (std::size_t p = 0; p < instance.player_count(); ++p) {
        const BestResponseCheck check = is_best_response(instance, profile, p, limits);
        out.gaps.push_back(check.gap);
        out.worst_gap = std::max(out.worst_gap, check.gap);
        if (!check.is_best) out.is_pne = false;
    }
    return out;
}

EquilibriumSummary enumerate_equilibria(const Instance& instance, const SearchLimits& limits,
                                        const ProfileVisitor& visit) {
    const std::size_t k = instance.player_count();
    const std::size_t q = instance.services_per_player();
    const std::uint64_t total = profile_space_size(q, k);
    require_within_cap(total, limits, "equilibrium enumeration");

    const auto perms = all_permutations(q);
    const ProfileCodec codec(k, perms.size());
    const std::uint64_t others_total = k == 0 ? 0 : total / perms.size();

    // Best achievable utility of each player against every opponent configuration.
    std::vector<std::vector<std::int64_t>> best(k, std::vector<std::int64_t>(others_total));
    for (std::size_t p = 0; p < k; ++p) {
        parallel_chunks(others_total, limits.threads, [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
            std::vector<std::size_t> deployment(instance.service_count(), 0);
            for (std::uint64_t o = lo; o < hi; ++o) {
                fill_deployment(instance, codec, perms, codec.from_others(o, p), deployment);
                const EtaBounds eta = compute_eta(instance, deployment, p);
                best[p][o] = best_response(instance, eta, limits).scaled_value;
            }
        });
    }

    const unsigned threads = std::max(1U, limits.threads);
    std::vector<ChunkResult> chunks(threads);
    parallel_chunks(total, threads, [&](unsigned t, std::uint64_t lo, std::uint64_t hi) {
        ChunkResult& out = chunks[t];
        std::vector<std::size_t> deployment(instance.service_count(), 0);
        for (std::uint64_t x = lo; x < hi; ++x) {
            fill_deployment(instance, codec, perms, x, deployment);
            std::int64_t welfare = 0;
            bool stable = true;
            for (std::size_t p = 0; p < k; ++p) {
                const std::int64_t u = scaled_utility(instance, deployment, p);
                welfare += u;
                if (u != best[p][codec.others_index(x, p)]) stable = false;
            }
            if (stable) out.equilibria.push_back(x);
            if (welfare > out.max_welfare) {
                out.max_welfare = welfare;
                out.max_index = x;
            }
            if (visit) {
                out.welfare.push_back(welfare);
                out.is_pne.push_back(stable);
            }
        }
    });

    EquilibriumSummary summary;
    summary.profiles = total;
    std::int64_t max_welfare = -1;
    std::uint64_t max_index = 0;
    std::optional<std::int64_t> best_pne;
    std::optional<std::int64_t> worst_pne;
    std::vector<std::size_t> deployment(instance.service_count(), 0);
    std::uint64_t next = 0;
    for (const ChunkResult& c : chunks) {
        if (c.max_welfare > max_welfare) {
            max_welfare = c.max_welfare;
            max_index = c.max_index;
        }
        for (std::uint64_t x : c.equilibria) {
            fill_deployment(instance, codec, perms, x, deployment);
            const std::int64_t w = scaled_welfare(instance, deployment);
            best_pne = std::max(best_pne.value_or(w), w);
            worst_pne = std::min(worst_pne.value_or(w), w);
            summary.equilibria.push_back(decode_profile(codec, perms, x));
        }
        for (std::size_t i = 0; i < c.welfare.size(); ++i, ++next) {
            visit(decode_profile(codec, perms, next), unscale(instance, c.welfare[i]), c.is_pne[i]);
        }
    }
    summary.max_welfare = unscale(instance, std::max<std::int64_t>(max_welfare, 0));
    summary.max_welfare_profile = decode_profile(codec, perms, max_index);
    if (best_pne) summary.best_pne_welfare = unscale(instance, *best_pne);
    if (worst_pne) summary.worst_pne_welfare = unscale(instance, *worst_pne);
    return summary;
}

namespace {

Rational welfare_ratio(const Rational& max_welfare, const std::optional<Rational>& pne_welfare) {
    if (!pne_welfare) {
        throw Error(ErrorCode::NoEquilibriumExists, "instance has no pure Nash equilibrium");
    }
    if (*pne_welfare == Rational{0}) return Rational{1};  // all rewards are zero
    return max_welfare / *pne_welfare;
}

}  // namespace

Rational price_of_anarchy(const EquilibriumSummary& summary) {
    return welfare_ratio(summary.max_welfare, summary.worst_pne_welfare);
}

Rational price_of_stability(const EquilibriumSummary& summary) {
    return welfare_ratio(summary.max_welfare, summary.best_pne_welfare);
}

Rational price_of_anarchy(const Instance& instance, const SearchLimits& limits) {
    return price_of_anarchy(enumerate_equilibria(instance, limits));
}

Rational price_of_stability(const Instance& instance, const SearchLimits& limits) {
    return price_of_stability(enumerate_equilibria(instance, limits));
}

std::string_view to_string(DynamicsPolicy policy) {
    switch (policy) {
        case DynamicsPolicy::RoundRobin: return "round-robin";
        case DynamicsPolicy::FirstImproving: return "first-improving";
    }
    return "unknown";
}

std::string_view to_string(DynamicsOutcome outcome) {
    switch (outcome) {
        case DynamicsOutcome::ConvergedPne: return "ConvergedPNE";
        case DynamicsOutcome::CycleDetected: return "CycleDetected";
        case DynamicsOutcome::IterationCap: return "IterationCap";
    }
    return "unknown";
}

DynamicsTrace best_response_dynamics(const Instance& instance, const Profile& start,
                                     DynamicsPolicy policy, std::size_t max_iters,
                                     const SearchLimits& limits, Tiebreak tiebreak) {
    check_profile(instance, start);
    const std::size_t k = instance.player_count();
    DynamicsTrace trace;
    trace.start = start;

    Profile current = start;
    std::unordered_map<std::string, std::size_t> seen{{current.key(), 0}};
    std::size_t cursor = 0;

    while (true) {
        const auto deployment = deployment_times(instance, current);
        std::optional<BestResponseResult> response;
        std::int64_t old_value = 0;
        for (std::size_t offset = 0; offset < k && !response; ++offset) {
            const std::size_t p = policy == DynamicsPolicy::RoundRobin ? (cursor + offset) % k : offset;
            const std::int64_t value = scaled_utility(instance, deployment, p);
            BestResponseResult br = best_response(instance, compute_eta(instance, deployment, p), limits, tiebreak);
            if (br.scaled_value > value) {
                old_value = value;
                response = std::move(br);
            }
        }
        if (!response) {
            trace.outcome = DynamicsOutcome::ConvergedPne;
            return trace;
        }
        if (trace.steps.size() >= max_iters) {
            trace.outcome = DynamicsOutcome::IterationCap;
            return trace;
        }

        current = current.with_order(response->player, response->schedule);
        trace.steps.push_back({response->player, unscale(instance, old_value), response->value, current});
        cursor = (response->player + 1) % std::max<std::size_t>(k, 1);

        const auto [it, inserted] = seen.emplace(current.key(), trace.steps.size());
        if (!inserted) {
            trace.outcome = DynamicsOutcome::CycleDetected;
            trace.period = trace.steps.size() - it->second;
            return trace;
        }
    }
}

ReplayTrace replay_responses(const Instance& instance, const Profile& start,
                             const std::vector<ScriptedResponse>& responses,
                             const SearchLimits& limits) {
    check_profile(instance, start);
    ReplayTrace trace;
    Profile current = start;
    for (const ScriptedResponse& r : responses) {
        current = current.with_order(r.player, r.schedule);
        check_profile(instance, current);
        const auto deployment = deployment_times(instance, current);

        ReplayStep step;
        step.player = r.player;
        step.profile = current;
        for (std::size_t p = 0; p < instance.player_count(); ++p) {
            step.utilities.push_back(unscale(instance, scaled_utility(instance, deployment, p)));
        }
        const EtaBounds eta = compute_eta(instance, deployment, r.player);
        step.best_value = exact_best_response(instance, eta, limits).value;
        step.certified = step.best_value == step.utilities[r.player];
        trace.steps.push_back(std::move(step));
    }
    trace.returns_to_start = !responses.empty() && current == start;
    return trace;
}

}  // namespace isg
