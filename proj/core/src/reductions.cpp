#include "isg/reductions.hpp"

#include <cstdlib>
#include <sstream>

#include "isg/error.hpp"

namespace isg {
namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedFormula, why); }

std::string literal_label(int literal) {
    return (literal > 0 ? "x" : "nx") + std::to_string(std::abs(literal));
}

void require_width(const CnfFormula& formula, std::size_t width) {
    for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
        if (formula.clauses[j].size() != width) {
            malformed("clause " + std::to_string(j + 1) + " has " + std::to_string(formula.clauses[j].size()) +
                      " literals, expected " + std::to_string(width));
        }
        for (int lit : formula.clauses[j]) {
            if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > formula.variables) {
                malformed("clause " + std::to_string(j + 1) + " uses an undeclared variable");
            }
        }
    }
}

std::size_t player_of(const Instance& instance, const std::string& name) {
    const auto p = instance.find_player(name);
    if (!p) throw Error(ErrorCode::ProfileMismatch, "certificate has no player '" + name + "'");
    return *p;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula formula;
    bool have_header = false;
    std::size_t declared = 0;
    std::vector<int> current;
    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first)) continue;
        if (first == "c") continue;
        if (first == "%") break;
        if (first == "p") {
            std::string format;
            long long vars = -1;
            long long clauses = -1;
            if (have_header || !(tokens >> format >> vars >> clauses) || format != "cnf" || vars < 0 ||
                clauses < 0) {
                malformed("bad DIMACS header: '" + line + "'");
            }
            have_header = true;
            formula.variables = static_cast<std::size_t>(vars);
            declared = static_cast<std::size_t>(clauses);
            continue;
        }
        if (!have_header) malformed("clause before the 'p cnf' header");
        tokens.clear();
        tokens.str(line);
        long long lit = 0;
        while (tokens >> lit) {
            if (lit == 0) {
                formula.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (static_cast<std::size_t>(std::llabs(lit)) > formula.variables) {
                malformed("literal " + std::to_string(lit) + " exceeds the declared variable count");
            }
            current.push_back(static_cast<int>(lit));
        }
        if (!tokens.eof()) malformed("unexpected token in line '" + line + "'");
    }
    if (!have_header) malformed("missing 'p cnf' header");
    if (!current.empty()) malformed("last clause is not terminated by 0");
    if (formula.clauses.size() != declared) {
        malformed("header declares " + std::to_string(declared) + " clauses, found " +
                  std::to_string(formula.clauses.size()));
    }
    return formula;
}

std::string_view to_string(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::Min2Sat: return "min2sat";
        case ReductionKind::WeightedCompletion: return "wct";
        case ReductionKind::ThreeSat: return "3sat";
    }
    return "unknown";
}

RawInstance no_pne_gadget(const std::string& first_player, const std::string& second_player,
                          const std::string& first_prefix, const std::string& second_prefix) {
    RawInstance raw;
    auto player = [](const std::string& name, const std::string& prefix, std::initializer_list<int> rewards) {
        RawPlayer p{name, {}};
        for (int r : rewards) p.services.push_back({prefix + std::to_string(r), Rational(r)});
        return p;
    };
    raw.players.push_back(player(first_player, first_prefix, {1, 4, 3, 2}));
    raw.players.push_back(player(second_player, second_prefix, {2, 4, 1, 3}));
    const auto a = [&](int r) { return first_prefix + std::to_string(r); };
    const auto b = [&](int r) { return second_prefix + std::to_string(r); };
    raw.edges = {{a(1), a(4)}, {b(2), a(3)}, {b(3), a(2)}, {a(4), b(4)}, {b(1), b(3)}};
    return raw;
}

ReductionCertificate reduce_min2sat(const CnfFormula& formula) {
    require_width(formula, 2);
    RawInstance raw;
    std::vector<std::pair<std::string, std::vector<std::string>>> mapping;
    for (std::size_t i = 1; i <= formula.variables; ++i) {
        const std::string x = "x" + std::to_string(i);
        raw.players.push_back({"P" + x, {{x, Rational(1)}, {"n" + x, Rational(1)}}});
        mapping.push_back({x, {x, "n" + x}});
    }
    for (std::size_t j = 1; j <= formula.clauses.size(); ++j) {
        const std::string c = "c" + std::to_string(j);
        const std::string c1 = c + "_1";
        const std::string c2 = c + "_2";
        raw.players.push_back({"P" + c, {{c1, Rational(1)}, {c2, Rational(1)}}});
        raw.edges.emplace_back(c1, c2);
        for (int lit : formula.clauses[j - 1]) raw.edges.emplace_back(literal_label(lit), c1);
        mapping.push_back({c, {c1, c2}});
    }
    const auto n = static_cast<std::int64_t>(formula.variables);
    const auto m = static_cast<std::int64_t>(formula.clauses.size());
    return ReductionCertificate{Instance::validate(raw), ReductionKind::Min2Sat, Rational(3 * n + 3 * m),
                                "3n+3m-k", std::move(mapping)};
}

ReductionCertificate reduce_weighted_completion(const WeightedCompletionInput& input) {
    RawInstance raw;
    RawPlayer machine{"P1", {}};
    std::vector<std::pair<std::string, std::vector<std::string>>> mapping;
    Rational total{0};
    for (const Job& job : input.jobs) {
        machine.services.push_back({job.id, job.weight});
        mapping.push_back({job.id, {job.id}});
        total += job.weight;
    }
    raw.players.push_back(std::move(machine));
    raw.edges = input.precedence;
    Instance instance = Instance::validate(raw);
    const Rational base = Rational(static_cast<std::int64_t>(input.jobs.size()) + 1) * total;
    return ReductionCertificate{std::move(instance), ReductionKind::WeightedCompletion, base,
                                "(|J|+1)*sum(w)-k", std::move(mapping)};
}

ReductionCertificate reduce_3sat(const CnfFormula& formula) {
    require_width(formula, 3);
    const bool padded = !formula.clauses.empty();
    RawInstance raw;
    std::vector<std::pair<std::string, std::vector<std::string>>> mapping;
    for (std::size_t i = 1; i <= formula.variables; ++i) {
        const std::string x = "x" + std::to_string(i);
        RawPlayer p{"P" + x, {{x, Rational(1)}, {"n" + x, Rational(1)}}};
        if (padded) {
            p.services.push_back({x + "_pad1", Rational(0)});
            p.services.push_back({x + "_pad2", Rational(0)});
        }
        std::vector<std::string> ids;
        for (const auto& s : p.services) ids.push_back(s.id);
        mapping.push_back({x, std::move(ids)});
        raw.players.push_back(std::move(p));
    }
    for (std::size_t j = 1; j <= formula.clauses.size(); ++j) {
        const std::string c = "c" + std::to_string(j);
        const std::string d = "d" + std::to_string(j);
        RawPlayer clause{"P" + c, {}};
        for (std::size_t l = 1; l <= 3; ++l) {
            const std::string id = c + "_" + std::to_string(l);
            clause.services.push_back({id, Rational(4)});
            raw.edges.emplace_back(literal_label(formula.clauses[j - 1][l - 1]), id);
        }
        clause.services.push_back({d, Rational(3)});
        mapping.push_back({c, {c + "_1", c + "_2", c + "_3", d}});
        raw.players.push_back(std::move(clause));

        const std::string g = "g" + std::to_string(j);
        RawInstance gadget = no_pne_gadget("P" + g + "a", "P" + g + "b", g + "a_", g + "b_");
        std::vector<std::string> ids;
        for (auto& p : gadget.players) {
            for (const auto& s : p.services) {
                ids.push_back(s.id);
                raw.edges.emplace_back(d, s.id);
            }
            raw.players.push_back(std::move(p));
        }
        for (auto& e : gadget.edges) raw.edges.push_back(std::move(e));
        mapping.push_back({"gadget" + std::to_string(j), std::move(ids)});
    }
    return ReductionCertificate{Instance::validate(raw), ReductionKind::ThreeSat, std::nullopt,
                                "pure Nash equilibrium exists", std::move(mapping)};
}

Profile threesat_witness_profile(const ReductionCertificate& certificate, const CnfFormula& formula,
                                 const std::vector<bool>& assignment) {
    if (assignment.size() != formula.variables) {
        throw Error(ErrorCode::InvalidParams, "assignment size does not match the variable count");
    }
    const Instance& inst = certificate.instance;
    Profile profile = Profile::identity(inst);
    const std::size_t q = inst.services_per_player();
    const auto satisfied = [&](int lit) {
        return assignment[static_cast<std::size_t>(std::abs(lit)) - 1] == (lit > 0);
    };

    for (std::size_t i = 1; i <= formula.variables; ++i) {
        std::vector<std::size_t> order = assignment[i - 1] ? std::vector<std::size_t>{0, 1}
                                                           : std::vector<std::size_t>{1, 0};
        for (std::size_t pad = 2; pad < q; ++pad) order.push_back(pad);
        profile = profile.with_order(player_of(inst, "Px" + std::to_string(i)), std::move(order));
    }
    for (std::size_t j = 1; j <= formula.clauses.size(); ++j) {
        std::vector<std::size_t> order;
        for (std::size_t l = 0; l < 3; ++l) {
            if (satisfied(formula.clauses[j - 1][l])) order.push_back(l);
        }
        for (std::size_t l = 0; l < 3; ++l) {
            if (!satisfied(formula.clauses[j - 1][l])) order.push_back(l);
        }
        order.push_back(3);
        profile = profile.with_order(player_of(inst, "Pc" + std::to_string(j)), std::move(order));
    }
    return profile;
}

}  // namespace isg
