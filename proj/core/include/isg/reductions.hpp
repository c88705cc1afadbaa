#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isg/instance.hpp"
#include "isg/profile.hpp"
#include "isg/rational.hpp"

namespace isg {

// Clauses hold DIMACS literals: +i / -i for variable i (1-based).
struct CnfFormula {
    std::size_t variables = 0;
    std::vector<std::vector<int>> clauses;
};

// DIMACS CNF text ("c" comments, one "p cnf <vars> <clauses>" header, clauses
// terminated by 0). Throws MalformedFormula.
CnfFormula parse_dimacs(std::string_view text);

enum class ReductionKind { Min2Sat, WeightedCompletion, ThreeSat };

std::string_view to_string(ReductionKind kind);

struct ReductionCertificate {
    Instance instance;
    ReductionKind kind;
    // Decision threshold is threshold_base - k for the source problem's bound k.
    // Absent for the 3SAT reduction, whose question is whether an equilibrium exists.
    std::optional<Rational> threshold_base;
    std::string threshold_formula;
    // Source object (variable, clause, job, gadget) -> the services built for it.
    std::vector<std::pair<std::string, std::vector<std::string>>> mapping;

    Rational threshold(const Rational& k) const { return threshold_base.value_or(Rational{0}) - k; }
};

/// Welfare reduction from Min 2SAT. Variable x_i becomes player Px<i> with
/// services x<i> and nx<i>; clause j becomes player Pc<j> with c<j>_1 -> c<j>_2,
/// and both literals of the clause precede c<j>_1. Uniform rewards, threshold
/// 3n + 3m - k. Throws MalformedFormula unless every clause has two literals.
ReductionCertificate reduce_min2sat(const CnfFormula& formula);

struct Job {
    std::string id;
    Rational weight{1};
};

struct WeightedCompletionInput {
    std::vector<Job> jobs;
    std::vector<std::pair<std::string, std::string>> precedence;  // (before, after)
};

// Single player, one service per unit-time job with reward equal to its weight
// and the same precedence graph. Threshold (|J|+1) * sum(w) - k.
// Throws CyclicDependencies, UnknownEdgeEndpoint, NegativeReward.
ReductionCertificate reduce_weighted_completion(const WeightedCompletionInput& input);

/// Equilibrium-existence reduction from 3SAT.
///
/// Variable x_i: player Px<i> with x<i>, nx<i> (reward 1) and, when there are
/// clauses, two isolated zero-reward services x<i>_pad1/x<i>_pad2 so every player
/// has four services. Clause j: player Pc<j> with c<j>_1..c<j>_3 (reward 4) and
/// d<j> (reward 3); the clause's l-th literal precedes c<j>_l. Each clause also
/// gets a copy of the two-player no-equilibrium gadget (players Pg<j>a, Pg<j>b)
/// whose eight services all depend on d<j>.
/// Throws MalformedFormula unless every clause has three literals.
ReductionCertificate reduce_3sat(const CnfFormula& formula);

// The schedule that is an equilibrium when `assignment` satisfies the formula:
// true literal first for variable players; satisfied clause services, then the
// others, then d<j> for clause players; gadgets in their listed order.
// `assignment[i]` is the value of variable i+1.
Profile threesat_witness_profile(const ReductionCertificate& certificate, const CnfFormula& formula,
                                 const std::vector<bool>& assignment);

// Raw copy of the two-player game without a pure equilibrium. Services are named
// <prefix><reward> (rewards are distinct per player) and listed in the order
// 1,4,3,2 for the first player and 2,4,1,3 for the second.
RawInstance no_pne_gadget(const std::string& first_player, const std::string& second_player,
                          const std::string& first_prefix, const std::string& second_prefix);

}  // namespace isg
