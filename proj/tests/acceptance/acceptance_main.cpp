// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "isg/best_response.hpp"
#include "isg/canned.hpp"
#include "isg/equilibrium.hpp"
#include "isg/evaluate.hpp"
#include "isg/generator.hpp"
#include "isg/ilp.hpp"
#include "isg/reductions.hpp"
#include "isg/welfare.hpp"
#include "oracles.hpp"

using namespace isg;

namespace {

// Collects failed expectations of one criterion and a short summary line.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    void note(const std::string& text) { notes_ += notes_.empty() ? text : "; " + text; }
    bool ok() const { return failed_ == 0; }
    std::string detail() const {
        if (ok()) return notes_;
        std::string out = std::to_string(failed_) + " failed: ";
        for (std::size_t i = 0; i < failures_.size(); ++i) out += (i ? " | " : "") + failures_[i];
        return out;
    }

private:
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
    std::string notes_;
};

std::string str(const Rational& r) { return format_rational(r); }

Instance random_uniform(std::uint64_t seed, std::size_t k, std::size_t q) {
    RandomInstanceParams p;
    p.players = k;
    p.services_per_player = q;
    p.reward_mode = RewardMode::Uniform;
    p.seed = seed;
    p.max_children = 1 + seed % 3;
    p.edge_prob = 0.2 + 0.15 * static_cast<double>(seed % 5);
    return random_instance(p);
}

oracle::Orders random_orders(std::size_t k, std::size_t q, std::mt19937_64& rng) {
    oracle::Orders orders(k, oracle::identity(q));
    for (auto& o : orders) std::shuffle(o.begin(), o.end(), rng);
    return orders;
}

CnfFormula random_cnf(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t width) {
    CnfFormula f{n, {}};
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<int> clause;
        for (std::size_t l = 0; l < width; ++l) {
            const int var = 1 + static_cast<int>(rng() % n);
            clause.push_back(rng() % 2 ? var : -var);
        }
        f.clauses.push_back(std::move(clause));
    }
    return f;
}

// 1
void example1_golden(Check& c) {
    const auto ex = canned("example1");
    const oracle::Game g(ex.instance);
    const struct {
        const char* profile;
        Rational u1, u2, welfare;
    } cases[] = {{"pi", Rational(33), Rational(303), Rational(336)},
                 {"pi_prime", Rational(15), Rational(501), Rational(516)}};
    for (const auto& k : cases) {
        const Profile& p = ex.profiles.at(k.profile);
        const Evaluation ev = evaluate(ex.instance, p);
        c.expect(ev.utilities == std::vector<Rational>{k.u1, k.u2},
                 std::string(k.profile) + " utilities " + str(ev.utilities[0]) + "," + str(ev.utilities[1]));
        c.expect(ev.welfare == k.welfare, std::string(k.profile) + " welfare " + str(ev.welfare));
        c.expect(oracle::utilities(g, p.orders()) == ev.utilities, std::string(k.profile) + " oracle disagrees");
        c.note(std::string(k.profile) + " " + str(ev.utilities[0]) + "+" + str(ev.utilities[1]) + "=" +
               str(ev.welfare));
    }
}

// 2
void conflict_free_counterexample(Check& c) {
    const auto ca = canned("conflict_appendix");
    const Evaluation a = evaluate(ca.instance, ca.profiles.at("pi_A"));
    const Evaluation b = evaluate(ca.instance, ca.profiles.at("pi_B"));
    c.expect(a.welfare == Rational(309) && a.conflict_free, "pi_A " + str(a.welfare));
    c.expect(b.welfare == Rational(407) && !b.conflict_free, "pi_B " + str(b.welfare));
    const WelfareResult opt = maximize_welfare_exact(ca.instance);
    c.expect(opt.value == Rational(407), "optimum " + str(opt.value));
    c.expect(!evaluate(ca.instance, opt.profile).conflict_free, "returned optimum is conflict-free");
    c.expect(oracle::max_welfare(oracle::Game(ca.instance)) == Rational(407), "oracle optimum");
    c.note("optimum " + str(opt.value) + ", conflict-free " + (evaluate(ca.instance, opt.profile).conflict_free ? "yes" : "no"));
}

// 3
void greedy_optimality(Check& c) {
    std::mt19937_64 rng(3);
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; checked < 150; ++seed) {
        const std::size_t k = 1 + seed % 3;
        const std::size_t q = 1 + (seed / 3) % 5;
        const Instance inst = random_uniform(1000 + seed, k, q);
        const oracle::Game g(inst);
        const oracle::Orders orders = random_orders(k, q, rng);
        const std::size_t player = rng() % k;
        const Profile profile(orders);
        const BestResponseResult greedy = isg::greedy_best_response(inst, profile, player);
        const oracle::Best brute = oracle::best_response(g, orders, player);
        c.expect(greedy.value == brute.value, "seed " + std::to_string(seed) + " greedy " + str(greedy.value) +
                                                  " brute " + str(brute.value));
        c.expect(brute_force_best_response(inst, profile, player).value == brute.value,
                 "seed " + std::to_string(seed) + " library brute force");
        oracle::Orders responded = orders;
        responded[player] = greedy.schedule;
        c.expect(oracle::utilities(g, responded)[player] == greedy.value, "seed " + std::to_string(seed) + " value");
        c.expect(oracle::sigma(g, responded, player) == 0, "seed " + std::to_string(seed) + " sigma");
        ++checked;
    }
    c.note(std::to_string(checked) + " instances");
}

// 4
void cycle_replay(Check& c) {
    const auto cy = canned("br_cycle");
    const auto& P = cy.profiles;
    const char* names[] = {"A", "B", "C", "D"};
    const std::size_t responder[] = {1, 0, 1, 0};
    std::vector<ScriptedResponse> script;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto order = P.at(names[i]).order(responder[i]);
        script.push_back({responder[i], {order.begin(), order.end()}});
    }
    const ReplayTrace trace = replay_responses(cy.instance, P.at("D"), script);
    c.expect(trace.steps.size() == 4, "steps");
    const Rational co[] = {Rational(8), Rational(8), Rational(9), Rational(9)};
    const oracle::Game g(cy.instance);
    std::string values;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const ReplayStep& s = trace.steps[i];
        const std::string tag = std::string("step ") + names[i];
        c.expect(s.certified, tag + " not certified");
        c.expect(s.utilities[s.player] == Rational(10), tag + " responder " + str(s.utilities[s.player]));
        c.expect(s.utilities[1 - s.player] == co[i], tag + " co-player " + str(s.utilities[1 - s.player]));
        c.expect(s.profile == P.at(names[i]), tag + " profile");
        c.expect(oracle::gap(g, s.profile.orders(), s.player) == Rational(0), tag + " oracle gap");
        values += (i ? " " : "") + str(s.utilities[s.player]) + "/" + str(s.utilities[1 - s.player]);
    }
    c.expect(trace.returns_to_start, "does not return to start");

    const Profile& pne = P.at("pne");
    bool depicted = true;
    for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t t = 0; t < 4; ++t)
            depicted = depicted && cy.instance.label(cy.instance.index_of({p, pne.order(p)[t]}))[0] == "abcd"[t];
    c.expect(depicted, "pne profile is not (a,b,c,d)/(a,b,c,d)");
    c.expect(verify_pne(cy.instance, pne).is_pne, "verify_pne rejects the depicted profile");
    c.expect(oracle::is_pne(g, pne.orders()), "oracle rejects the depicted profile");
    c.note("responder/co-player " + values);
}

// 5
void pne_construction(Check& c) {
    std::size_t canned_checked = 0, random_checked = 0;
    auto check_one = [&](const Instance& inst, const std::string& tag) {
        const Profile p = construct_pne_uniform(inst);
        c.expect(verify_pne(inst, p).is_pne, tag + " verify_pne");
        c.expect(oracle::is_pne(oracle::Game(inst), p.orders()), tag + " oracle");
    };
    for (const std::string& name : canned_names()) {
        if (name == "poa_family") continue;
        const auto ci = canned(name);
        if (!ci.instance.uniform_rewards()) continue;
        check_one(ci.instance, name);
        ++canned_checked;
    }
    for (std::size_t k = 2; k <= 4; ++k)
        for (std::size_t q = 2; q <= 4; ++q) {
            check_one(canned("poa_family", {k, q}).instance, "poa_family " + std::to_string(k) + "x" + std::to_string(q));
            ++canned_checked;
        }
    for (std::uint64_t seed = 0; random_checked < 150; ++seed) {
        const std::size_t k = 1 + seed % 4;
        const std::size_t q = 1 + (seed / 4) % 4;
        check_one(random_uniform(5000 + seed, k, q), "seed " + std::to_string(seed));
        ++random_checked;
    }
    c.note(std::to_string(canned_checked) + " canned, " + std::to_string(random_checked) + " random");
}

// 6
void no_pne_certification(Check& c) {
    const auto np = canned("no_pne");
    const EquilibriumSummary s = enumerate_equilibria(np.instance);
    c.expect(s.profiles == 576, "profiles " + std::to_string(s.profiles));
    c.expect(s.equilibria.empty(), std::to_string(s.equilibria.size()) + " equilibria");
    std::size_t oracle_profiles = 0, oracle_pne = 0;
    const oracle::Game g(np.instance);
    oracle::for_each_profile(g, [&](const oracle::Orders& o) {
        ++oracle_profiles;
        if (oracle::is_pne(g, o)) ++oracle_pne;
    });
    c.expect(oracle_profiles == 576 && oracle_pne == 0, "oracle finds " + std::to_string(oracle_pne));
    c.note(std::to_string(s.profiles) + " profiles, " + std::to_string(s.equilibria.size()) + " equilibria");
}

// 7
void pos_instance(Check& c) {
    const auto pos = canned("pos_example");
    const EquilibriumSummary s = enumerate_equilibria(pos.instance);
    c.expect(s.profiles == 1296, "profiles " + std::to_string(s.profiles));
    c.expect(s.max_welfare == Rational(23), "max welfare " + str(s.max_welfare));
    c.expect(s.best_pne_welfare.has_value(), "no equilibrium");
    if (!s.best_pne_welfare) return;
    c.expect(*s.best_pne_welfare <= Rational(22), "best equilibrium " + str(*s.best_pne_welfare));
    // frozen regression value
    c.expect(*s.best_pne_welfare == Rational(22), "best equilibrium changed: " + str(*s.best_pne_welfare));
    const oracle::Landscape l = oracle::landscape(oracle::Game(pos.instance));
    c.expect(l.max_welfare == s.max_welfare, "oracle max welfare");
    c.expect(l.best_pne == s.best_pne_welfare, "oracle best equilibrium");
    c.note("max welfare " + str(s.max_welfare) + ", best equilibrium welfare " + str(*s.best_pne_welfare) +
           ", PoS " + str(price_of_stability(s)));
}

// 8
void poa_bounds(Check& c) {
    std::size_t family = 0, bounded = 0;
    for (std::size_t k = 2; k <= 4; ++k)
        for (std::size_t q = 2; q <= 4; ++q) {
            const Instance inst = canned("poa_family", {k, q}).instance;
            const Rational poa = price_of_anarchy(inst);
            const auto ki = static_cast<std::int64_t>(k), qi = static_cast<std::int64_t>(q);
            const Rational expected(ki * (qi + 1), qi + 2 * ki - 1);
            c.expect(poa == expected, std::to_string(k) + "x" + std::to_string(q) + " PoA " + str(poa) +
                                          " expected " + str(expected));
            c.expect(poa <= Rational(qi + 1, 2), std::to_string(k) + "x" + std::to_string(q) + " above (q+1)/2");
            ++family;
        }
    std::vector<Instance> uniform;
    for (const std::string& name : canned_names()) {
        if (name == "poa_family") continue;
        const auto ci = canned(name);
        if (ci.instance.uniform_rewards()) uniform.push_back(ci.instance);
    }
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t k = 2 + seed % 2;
        const std::size_t q = 2 + (seed / 2) % 3;
        uniform.push_back(random_uniform(9000 + seed, k, q));
    }
    for (const Instance& inst : uniform) {
        const std::size_t q = inst.services_per_player();
        const Rational poa = price_of_anarchy(inst);
        c.expect(poa <= Rational(static_cast<std::int64_t>(q) + 1, 2), "PoA " + str(poa) + " above (q+1)/2");
        ++bounded;
    }
    c.note(std::to_string(family) + " family members exact, " + std::to_string(bounded + family) +
           " instances within (q+1)/2");
}

// 9
void min2sat_identity(Check& c) {
    std::mt19937_64 rng(9);
    std::size_t checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        const std::size_t m = 1 + rng() % 3;
        const CnfFormula f = random_cnf(rng, n, m, 2);
        const ReductionCertificate cert = reduce_min2sat(f);
        const Rational lhs = oracle::max_welfare(oracle::Game(cert.instance));
        const auto rhs = static_cast<std::int64_t>(3 * n + 3 * m - oracle::min_satisfied(n, f.clauses));
        c.expect(lhs == Rational(rhs), "trial " + std::to_string(trial) + " welfare " + str(lhs) + " vs " +
                                           std::to_string(rhs));
        c.expect(brute_force_welfare(cert.instance).value == lhs, "trial " + std::to_string(trial) + " library");
        ++checked;
    }
    c.note(std::to_string(checked) + " formulas");
}

// 10
void wct_identity(Check& c) {
    std::mt19937_64 rng(10);
    std::size_t checked = 0, optima = 0;
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        WeightedCompletionInput in;
        std::vector<Rational> w;
        std::vector<std::pair<std::size_t, std::size_t>> prec;
        for (std::size_t j = 0; j < n; ++j) {
            w.emplace_back(static_cast<std::int64_t>(1 + rng() % 9));
            in.jobs.push_back({"j" + std::to_string(j + 1), w.back()});
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (rng() % 3 == 0) {
                    prec.emplace_back(a, b);
                    in.precedence.emplace_back(in.jobs[a].id, in.jobs[b].id);
                }
        const ReductionCertificate cert = reduce_weighted_completion(in);
        Rational total{0};
        for (const Rational& x : w) total += x;
        const Rational expected = Rational(static_cast<std::int64_t>(n) + 1) * total -
                                  oracle::min_weighted_completion(w, prec);
        const WelfareResult r = maximize_welfare_single_player(cert.instance);
        const std::string tag = "trial " + std::to_string(trial);
        c.expect(r.value == expected, tag + " welfare " + str(r.value) + " expected " + str(expected));
        c.expect(*cert.threshold_base == Rational(static_cast<std::int64_t>(n) + 1) * total, tag + " threshold");

        const oracle::Game g(cert.instance);
        oracle::for_each_profile(g, [&](const oracle::Orders& o) {
            if (oracle::welfare(g, o) != expected) return;
            ++optima;
            c.expect(evaluate(cert.instance, Profile(o)).conflict_free, tag + " optimum not conflict-free");
        });
        ++checked;
    }
    c.note(std::to_string(checked) + " job sets, " + std::to_string(optima) + " optima all conflict-free");
}

// 11
void threesat_forward(Check& c) {
    std::mt19937_64 rng(11);
    std::size_t checked = 0;
    for (int trial = 0; trial < 60 && checked < 8; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        const std::size_t m = 1 + rng() % 2;
        const CnfFormula f = random_cnf(rng, n, m, 3);
        std::vector<bool> assignment;
        if (!oracle::satisfiable(n, f.clauses, &assignment)) continue;
        const ReductionCertificate cert = reduce_3sat(f);
        const Profile witness = threesat_witness_profile(cert, f, assignment);
        const std::string tag = "trial " + std::to_string(trial);
        c.expect(verify_pne(cert.instance, witness).is_pne, tag + " verify_pne");
        c.expect(oracle::is_pne(oracle::Game(cert.instance), witness.orders()), tag + " oracle");
        ++checked;
    }
    c.expect(checked >= 5, "only " + std::to_string(checked) + " satisfiable formulas");
    c.note(std::to_string(checked) + " satisfiable formulas");
}

// 12
void ilp_fidelity(Check& c) {
    {
        const oracle::LpModel lp = oracle::parse_lp(emit_lp(canned("example1").instance));
        c.expect(lp.binaries.size() == 36, "example1 variables " + std::to_string(lp.binaries.size()));
        c.expect(lp.rows.size() == 42, "example1 constraints " + std::to_string(lp.rows.size()));
    }
    std::vector<CannedInstance> instances;
    for (const std::string& name : canned_names()) instances.push_back(canned(name));
    for (std::size_t k = 2; k <= 3; ++k)
        for (std::size_t q = 2; q <= 3; ++q) instances.push_back(canned("poa_family", {k, q}));

    std::mt19937_64 rng(12);
    std::size_t profiles = 0;
    for (const CannedInstance& ci : instances) {
        const Instance& inst = ci.instance;
        const IlpModel model = build_ilp_model(inst);
        const oracle::LpModel lp = oracle::parse_lp(write_lp(model));
        const oracle::Game g(inst);
        auto check = [&](const oracle::Orders& orders) {
            const std::vector<std::size_t> when = oracle::deploy_times(g, orders);
            std::map<std::string, int> x;
            for (std::size_t v = 0; v < inst.service_count(); ++v) {
                const std::size_t active = oracle::activation(g, orders, v);
                for (std::size_t t = 1; t <= model.steps; ++t) {
                    x[model.variable_names[model.deploy_var(v, t)]] = when[v] == t ? 1 : 0;
                    x[model.variable_names[model.active_var(v, t)]] = active <= t ? 1 : 0;
                }
            }
            for (const auto& row : lp.rows) {
                const std::int64_t lhs = oracle::lp_value(row.terms, x);
                const bool ok = row.sense == "<=" ? lhs <= row.rhs : row.sense == "=" ? lhs == row.rhs : lhs >= row.rhs;
                c.expect(ok, ci.name + " violates " + row.name);
            }
            c.expect(Rational(oracle::lp_value(lp.objective, x), lp.objective_scale) ==
                         evaluate(inst, Profile(orders)).welfare,
                     ci.name + " objective");
            ++profiles;
        };
        if (profile_space_size(inst.services_per_player(), inst.player_count()) <= 2000) {
            oracle::for_each_profile(g, check);
        } else {
            for (int i = 0; i < 300; ++i) check(random_orders(inst.player_count(), inst.services_per_player(), rng));
        }
        for (const auto& [name, p] : ci.profiles) check(p.orders());
    }
    c.note(std::to_string(instances.size()) + " canned instances, " + std::to_string(profiles) + " assignments");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"example 1 golden evaluations", example1_golden},
        {"conflict-free counterexample", conflict_free_counterexample},
        {"greedy best response optimal, sigma 0", greedy_optimality},
        {"best-response cycle replay and depicted equilibrium", cycle_replay},
        {"equilibrium construction verified", pne_construction},
        {"no-equilibrium instance exhausted", no_pne_certification},
        {"price of stability instance", pos_instance},
        {"price of anarchy family and bound", poa_bounds},
        {"min 2SAT threshold identity", min2sat_identity},
        {"weighted completion threshold identity", wct_identity},
        {"3SAT witness is an equilibrium", threesat_forward},
        {"ILP fidelity", ilp_fidelity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s (%s) [%lld ms]\n", check.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    check.detail().c_str(), static_cast<long long>(ms));
        std::fflush(stdout);
        if (!check.ok()) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
