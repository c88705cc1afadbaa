#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "isg/instance.hpp"

namespace isg {

struct LinearTerm {
    std::int64_t coefficient = 0;
    std::size_t variable = 0;
};

enum class ConstraintSense { LessEqual, Equal };

struct LinearConstraint {
    std::string name;
    std::vector<LinearTerm> terms;
    ConstraintSense sense = ConstraintSense::Equal;
    std::int64_t rhs = 0;
};

/// Time-indexed binary program for welfare maximisation.
///
/// s(v,t) = 1 iff v is deployed at step t; a(v,t) = 1 iff v is active at step t.
/// Constraint families, in emission order:
///   each service deployed once                     |T|
///   each player deploys one service per step       k*q
///   a(v,t) <= sum_{t'<=t} s(v,t')                  |T|*q
///   a(v,t) <= a(w,t) for every closed edge (w,v)   |E|*q
/// Objective coefficients are rewards times objective_scale (the instance's
/// reward_scale), so the optimum equals objective_scale times the max welfare.
struct IlpModel {
    std::size_t services = 0;
    std::size_t steps = 0;
    std::int64_t objective_scale = 1;
    std::vector<std::string> variable_names;
    std::vector<LinearTerm> objective;
    std::vector<LinearConstraint> constraints;

    std::size_t deploy_var(std::size_t service, std::size_t step) const {
        return service * steps + (step - 1);
    }
    std::size_t active_var(std::size_t service, std::size_t step) const {
        return services * steps + service * steps + (step - 1);
    }
};

IlpModel build_ilp_model(const Instance& instance);

// CPLEX LP text: Maximize / Subject To / Binary / End.
std::string write_lp(const IlpModel& model);

inline std::string emit_lp(const Instance& instance) { return write_lp(build_ilp_model(instance)); }

// Service labels reduced to [A-Za-z0-9_] and made unique, by global index.
std::vector<std::string> sanitized_labels(const Instance& instance);

}  // namespace isg
