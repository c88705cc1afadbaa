#include "isg/canned.hpp"

#include "isg/error.hpp"
#include "isg/reductions.hpp"

namespace isg {
namespace {

using Orders = std::vector<std::vector<std::size_t>>;

RawPlayer uniform_player(const std::string& name, const std::vector<std::string>& ids) {
    RawPlayer p{name, {}};
    for (const auto& id : ids) p.services.push_back({id, Rational(1)});
    return p;
}

CannedInstance example1() {
    RawInstance raw;
    raw.players = {{"P1", {{"s11", Rational(10)}, {"s12", Rational(1)}, {"s13", Rational(1)}}},
                   {"P2", {{"s21", Rational(1)}, {"s22", Rational(100)}, {"s23", Rational(100)}}}};
    raw.edges = {{"s12", "s13"}, {"s11", "s21"}, {"s12", "s22"}, {"s12", "s23"}};
    CannedInstance c{"example1", Instance::validate(raw), {}};
    c.profiles.emplace("pi", Profile(Orders{{0, 1, 2}, {0, 1, 2}}));
    c.profiles.emplace("pi_prime", Profile(Orders{{1, 2, 0}, {1, 2, 0}}));
    return c;
}

CannedInstance conflict_appendix() {
    RawInstance raw;
    raw.players = {uniform_player("P1", {"s11", "s12", "s13"}),
                   {"P2", {{"s21", Rational(1)}, {"s22", Rational(100)}, {"s23", Rational(100)}}}};
    raw.edges = {{"s11", "s12"}, {"s12", "s13"}, {"s11", "s21"}, {"s12", "s22"}, {"s12", "s23"}};
    CannedInstance c{"conflict_appendix", Instance::validate(raw), {}};
    c.profiles.emplace("pi_A", Profile(Orders{{0, 1, 2}, {0, 1, 2}}));
    c.profiles.emplace("pi_B", Profile(Orders{{0, 1, 2}, {1, 2, 0}}));
    return c;
}

Instance cycle_instance() {
    RawInstance raw;
    raw.players = {uniform_player("P1", {"a1", "b1", "c1", "d1"}),
                   uniform_player("P2", {"a2", "b2", "c2", "d2"})};
    raw.edges = {{"a1", "a2"}, {"b1", "b2"}, {"c2", "c1"}, {"d2", "d1"}};
    return Instance::validate(raw);
}

CannedInstance br_cycle() {
    // Local indices: a=0, b=1, c=2, d=3.
    CannedInstance c{"br_cycle", cycle_instance(), {}};
    c.profiles.emplace("A", Profile(Orders{{2, 0, 3, 1}, {3, 0, 2, 1}}));
    c.profiles.emplace("B", Profile(Orders{{3, 1, 2, 0}, {3, 0, 2, 1}}));
    c.profiles.emplace("C", Profile(Orders{{3, 1, 2, 0}, {2, 3, 1, 0}}));
    c.profiles.emplace("D", Profile(Orders{{2, 0, 3, 1}, {2, 3, 1, 0}}));
    c.profiles.emplace("pne", Profile(Orders{{0, 1, 2, 3}, {0, 1, 2, 3}}));
    return c;
}

CannedInstance pne_of_cycle() {
    CannedInstance c{"pne_of_cycle", cycle_instance(), {}};
    c.profiles.emplace("pne", Profile(Orders{{0, 1, 2, 3}, {0, 1, 2, 3}}));
    return c;
}

CannedInstance no_pne() {
    CannedInstance c{"no_pne", Instance::validate(no_pne_gadget("P1", "P2", "p1_", "p2_")), {}};
    c.profiles.emplace("depicted", Profile(Orders{{0, 1, 2, 3}, {0, 1, 2, 3}}));
    return c;
}

CannedInstance pos_example() {
    RawInstance raw;
    for (int p = 1; p <= 4; ++p) {
        const std::string s = "s" + std::to_string(p);
        raw.players.push_back(uniform_player("P" + std::to_string(p), {s + "1", s + "2", s + "3"}));
    }
    raw.edges = {{"s11", "s12"}, {"s12", "s21"}, {"s12", "s22"}, {"s21", "s32"}, {"s21", "s42"},
                 {"s22", "s32"}, {"s22", "s42"}, {"s32", "s33"}, {"s42", "s43"}};
    CannedInstance c{"pos_example", Instance::validate(raw), {}};
    c.profiles.emplace("welfare23", Profile(Orders(4, {0, 1, 2})));
    return c;
}

CannedInstance poa_family(const CannedParams& params) {
    const std::size_t k = params.players;
    const std::size_t q = params.services_per_player;
    if (k < 1 || q < 1) throw Error(ErrorCode::InvalidParams, "poa_family needs k >= 1 and q >= 1");
    RawInstance raw;
    for (std::size_t p = 1; p <= k; ++p) {
        std::vector<std::string> ids;
        for (std::size_t j = 1; j <= q; ++j) ids.push_back("s" + std::to_string(p) + "_" + std::to_string(j));
        raw.players.push_back(uniform_player("P" + std::to_string(p), ids));
    }
    const std::string hub = "s1_" + std::to_string(q);
    for (std::size_t p = 2; p <= k; ++p) {
        for (std::size_t j = 1; j <= q; ++j) raw.edges.emplace_back(hub, "s" + std::to_string(p) + "_" + std::to_string(j));
    }
    CannedInstance c{"poa_family", Instance::validate(raw), {}};
    Profile worst = Profile::identity(c.instance);
    std::vector<std::size_t> hub_first{q - 1};
    for (std::size_t j = 0; j + 1 < q; ++j) hub_first.push_back(j);
    c.profiles.emplace("worst_pne", worst);
    c.profiles.emplace("best", worst.with_order(0, hub_first));
    return c;
}

}  // namespace

const std::vector<std::string>& canned_names() {
    static const std::vector<std::string> names{"example1",    "conflict_appendix", "br_cycle",
                                                "pne_of_cycle", "no_pne",            "pos_example",
                                                "poa_family"};
    return names;
}

CannedInstance canned(std::string_view name, const CannedParams& params) {
    if (name == "example1") return example1();
    if (name == "conflict_appendix") return conflict_appendix();
    if (name == "br_cycle") return br_cycle();
    if (name == "pne_of_cycle") return pne_of_cycle();
    if (name == "no_pne") return no_pne();
    if (name == "pos_example") return pos_example();
    if (name == "poa_family") return poa_family(params);
    throw Error(ErrorCode::UnknownCannedName, "unknown canned instance '" + std::string(name) + "'");
}

}  // namespace isg
