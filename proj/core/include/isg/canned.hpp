#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "isg/instance.hpp"
#include "isg/profile.hpp"

namespace isg {

struct CannedInstance {
    std::string name;
    Instance instance;
    std::map<std::string, Profile> profiles;
};

// Parameters are only read by "poa_family".
struct CannedParams {
    std::size_t players = 2;
    std::size_t services_per_player = 2;
};

// Known names:
//   example1           two players, rewards 10/1/1 and 1/100/100; profiles pi, pi_prime
//   conflict_appendix  as example1 with player 1 a uniform chain; profiles pi_A, pi_B
//   br_cycle           best-response cycle game; profiles A, B, C, D, pne
//   pne_of_cycle       br_cycle with only its equilibrium profile "pne"
//   no_pne             two players, four services each, no pure equilibrium; profile depicted
//   pos_example        four players, three uniform services; profile welfare23
//   poa_family         player 1's last service precedes every other player's services;
//                      profiles worst_pne (hub last), best (hub first)
// Throws UnknownCannedName, or InvalidParams for a degenerate poa_family.
CannedInstance canned(std::string_view name, const CannedParams& params = {});

const std::vector<std::string>& canned_names();

}  // namespace isg
