#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "isg/evaluate.hpp"
#include "isg/instance.hpp"
#include "isg/profile.hpp"
#include "isg/reductions.hpp"

namespace isg {

using Json = nlohmann::ordered_json;

// Instance file:
//   {"players":[{"name":"P1","services":[{"id":"s11","reward":"10"},...]},...],
//    "edges":[["s11","s21"],...], "meta":{...}}
// Rewards are exact decimal or p/q strings (plain JSON integers are accepted
// too). "meta" is ignored on input. Throws ParseError on shape errors; semantic
// errors come from Instance::validate.
RawInstance raw_instance_from_json(const Json& doc);
Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& instance);

// Profile file: {"schedule":{"P1":["s11","s12","s13"],...}}.
// Throws UnknownPlayer or ProfileMismatch.
Profile profile_from_json(const Json& doc, const Instance& instance);
Json profile_to_json(const Instance& instance, const Profile& profile);
// Just the {"P1":[...],...} object.
Json schedule_to_json(const Instance& instance, const Profile& profile);

// {"activation":{id:t},"utilities":{player:"r"},"welfare":"r","sigma":{player:n},"conflict_free":b}
Json evaluation_to_json(const Instance& instance, const Evaluation& evaluation);

// Jobs file: {"jobs":[{"id":"j1","weight":"2"},...],"precedence":[["j1","j2"],...]}.
WeightedCompletionInput jobs_from_json(const Json& doc);

Json parse_json_text(const std::string& text);

}  // namespace isg
