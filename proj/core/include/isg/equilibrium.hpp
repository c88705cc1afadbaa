#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "isg/best_response.hpp"
#include "isg/instance.hpp"
#include "isg/profile.hpp"
#include "isg/rational.hpp"
#include "isg/search.hpp"

namespace isg {

/// Bookkeeping of the uniform-reward equilibrium construction at the start of
/// one iteration. Every scheduled service has all of its predecessors
/// scheduled, so its activation time is already fixed.
struct EtaBarState {
    std::vector<std::vector<std::size_t>> scheduled;  // per player, local indices in order
    std::vector<std::size_t> alpha;                   // per player, scheduled count
    std::vector<std::size_t> activation;              // by global index, 0 if unscheduled
    // Lower bound on the activation time reachable by any completion, by global
    // index. For scheduled services it equals the activation time.
    std::vector<std::size_t> eta_bar;
};

// Computes alpha, activation and eta_bar for the given scheduled prefixes.
// Every predecessor of a scheduled service must itself be scheduled.
EtaBarState make_eta_bar_state(const Instance& instance,
                               std::vector<std::vector<std::size_t>> scheduled);

// Polynomial construction of a pure Nash equilibrium for uniform rewards.
// Repeatedly picks an unscheduled service with no unscheduled own predecessor
// that minimises eta_bar (lowest global index on ties) and appends it, together
// with all its unscheduled predecessors, to the owners' schedules. Within one
// owner the block is ordered topologically, lowest index first.
// Throws NotUniform. When `trace` is given, the state before every iteration
// and the final state are appended to it.
Profile construct_pne_uniform(const Instance& instance, std::vector<EtaBarState>* trace = nullptr);

struct PneVerification {
    bool is_pne = false;
    Rational worst_gap{0};
    std::vector<Rational> gaps;  // by player
};

PneVerification verify_pne(const Instance& instance, const Profile& profile,
                           const SearchLimits& limits = {});

struct EquilibriumSummary {
    std::uint64_t profiles = 0;
    std::vector<Profile> equilibria;  // enumeration order
    Rational max_welfare{0};
    Profile max_welfare_profile;
    std::optional<Rational> best_pne_welfare;
    std::optional<Rational> worst_pne_welfare;
};

// Called once per profile, in enumeration order.
using ProfileVisitor = std::function<void(const Profile&, const Rational& welfare, bool is_pne)>;

// Exhaustive scan over all (q!)^k profiles, ordered lexicographically with player
// 0 most significant. Throws SizeGuardExceeded.
EquilibriumSummary enumerate_equilibria(const Instance& instance, const SearchLimits& limits = {},
                                        const ProfileVisitor& visit = {});

// Ratios of maximum welfare to the worst / best equilibrium welfare. Throw
// NoEquilibriumExists when the instance has no pure equilibrium.
Rational price_of_anarchy(const EquilibriumSummary& summary);
Rational price_of_stability(const EquilibriumSummary& summary);
Rational price_of_anarchy(const Instance& instance, const SearchLimits& limits = {});
Rational price_of_stability(const Instance& instance, const SearchLimits& limits = {});

enum class DynamicsPolicy {
    RoundRobin,      // players take turns, resuming after the last responder
    FirstImproving,  // the lowest-index player with a positive gap responds
};

enum class DynamicsOutcome { ConvergedPne, CycleDetected, IterationCap };

std::string_view to_string(DynamicsPolicy policy);
std::string_view to_string(DynamicsOutcome outcome);

struct DynamicsStep {
    std::size_t player = 0;
    Rational old_value{0};
    Rational new_value{0};
    Profile profile;  // after the response
};

struct DynamicsTrace {
    Profile start;
    std::vector<DynamicsStep> steps;
    DynamicsOutcome outcome = DynamicsOutcome::IterationCap;
    std::size_t period = 0;  // cycle length in steps when CycleDetected
};

// Best-response dynamics. Responses come from best_response() (greedy for
// uniform rewards, exact otherwise) and are applied only when they strictly
// improve the responder. Stops at the first of: no player can improve, a profile
// repeats, or `max_iters` responses were applied.
DynamicsTrace best_response_dynamics(const Instance& instance, const Profile& start,
                                     DynamicsPolicy policy, std::size_t max_iters,
                                     const SearchLimits& limits = {},
                                     Tiebreak tiebreak = Tiebreak::LowestIndex);

struct ScriptedResponse {
    std::size_t player = 0;
    std::vector<std::size_t> schedule;
};

struct ReplayStep {
    std::size_t player = 0;
    Profile profile;                 // after the response
    std::vector<Rational> utilities;  // all players, after the response
    Rational best_value{0};          // responder's optimum against the others
    bool certified = false;          // responder's new utility equals best_value
};

struct ReplayTrace {
    std::vector<ReplayStep> steps;
    bool returns_to_start = false;
};

// Applies a given sequence of responses and certifies each one against an exact
// best response.
ReplayTrace replay_responses(const Instance& instance, const Profile& start,
                             const std::vector<ScriptedResponse>& responses,
                             const SearchLimits& limits = {});

}  // namespace isg
