#include "isg/json_io.hpp"

#include "isg/error.hpp"

namespace isg {
namespace {

[[noreturn]] void shape_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& member(const Json& obj, const char* key, const std::string& context) {
    if (!obj.is_object() || !obj.contains(key)) shape_error(context + ": missing \"" + key + "\"");
    return obj.at(key);
}

std::string string_of(const Json& value, const std::string& context) {
    if (!value.is_string()) shape_error(context + ": expected a string");
    return value.get<std::string>();
}

Rational rational_of(const Json& value, const std::string& context) {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
    shape_error(context + ": expected an exact rational string");
}

std::vector<std::pair<std::string, std::string>> pairs_of(const Json& list, const std::string& context) {
    if (!list.is_array()) shape_error(context + ": expected an array of pairs");
    std::vector<std::pair<std::string, std::string>> out;
    for (const Json& e : list) {
        if (!e.is_array() || e.size() != 2) shape_error(context + ": each entry must be a pair");
        out.emplace_back(string_of(e[0], context), string_of(e[1], context));
    }
    return out;
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        shape_error(std::string("invalid JSON: ") + e.what());
    }
}

RawInstance raw_instance_from_json(const Json& doc) {
    RawInstance raw;
    const Json& players = member(doc, "players", "instance");
    if (!players.is_array()) shape_error("instance: \"players\" must be an array");
    for (const Json& p : players) {
        RawPlayer player{string_of(member(p, "name", "player"), "player name"), {}};
        const Json& services = member(p, "services", "player " + player.name);
        if (!services.is_array()) shape_error("player " + player.name + ": \"services\" must be an array");
        for (const Json& s : services) {
            RawService service;
            service.id = string_of(member(s, "id", "service"), "service id");
            service.reward = s.contains("reward") ? rational_of(s.at("reward"), "reward of " + service.id)
                                                  : Rational(1);
            player.services.push_back(std::move(service));
        }
        raw.players.push_back(std::move(player));
    }
    if (doc.contains("edges")) raw.edges = pairs_of(doc.at("edges"), "edges");
    return raw;
}

Instance instance_from_json(const Json& doc) { return Instance::validate(raw_instance_from_json(doc)); }

Json instance_to_json(const Instance& instance) {
    Json doc;
    doc["players"] = Json::array();
    const std::size_t q = instance.services_per_player();
    for (std::size_t p = 0; p < instance.player_count(); ++p) {
        Json services = Json::array();
        for (std::size_t j = 0; j < q; ++j) {
            const std::size_t v = p * q + j;
            services.push_back({{"id", instance.label(v)}, {"reward", format_rational(instance.reward(v))}});
        }
        doc["players"].push_back({{"name", instance.player_name(p)}, {"services", std::move(services)}});
    }
    doc["edges"] = Json::array();
    for (const Edge& e : instance.base_edges()) {
        doc["edges"].push_back({instance.label(e.from), instance.label(e.to)});
    }
    return doc;
}

Profile profile_from_json(const Json& doc, const Instance& instance) {
    const Json& schedule = member(doc, "schedule", "profile");
    if (!schedule.is_object()) shape_error("profile: \"schedule\" must be an object");
    std::vector<std::vector<std::size_t>> orders(instance.player_count());
    std::vector<bool> given(instance.player_count(), false);
    for (const auto& [name, list] : schedule.items()) {
        const auto p = instance.find_player(name);
        if (!p) throw Error(ErrorCode::UnknownPlayer, "profile names unknown player '" + name + "'");
        if (!list.is_array()) shape_error("profile: schedule of " + name + " must be an array");
        for (const Json& id : list) {
            const std::string label = string_of(id, "schedule of " + name);
            const auto v = instance.find_service(label);
            if (!v || instance.owner(*v) != *p) {
                throw Error(ErrorCode::ProfileMismatch,
                            "service '" + label + "' does not belong to player '" + name + "'");
            }
            orders[*p].push_back(instance.service(*v).local);
        }
        given[*p] = true;
    }
    for (std::size_t p = 0; p < given.size(); ++p) {
        if (!given[p]) {
            throw Error(ErrorCode::ProfileMismatch, "profile has no schedule for '" + instance.player_name(p) + "'");
        }
    }
    Profile profile(std::move(orders));
    check_profile(instance, profile);
    return profile;
}

Json schedule_to_json(const Instance& instance, const Profile& profile) {
    Json schedule = Json::object();
    for (std::size_t p = 0; p < profile.player_count(); ++p) {
        Json ids = Json::array();
        for (std::size_t local : profile.order(p)) ids.push_back(instance.label(instance.index_of({p, local})));
        schedule[instance.player_name(p)] = std::move(ids);
    }
    return schedule;
}

Json profile_to_json(const Instance& instance, const Profile& profile) {
    return Json{{"schedule", schedule_to_json(instance, profile)}};
}

Json evaluation_to_json(const Instance& instance, const Evaluation& evaluation) {
    Json doc;
    Json activation = Json::object();
    for (std::size_t v = 0; v < instance.service_count(); ++v) activation[instance.label(v)] = evaluation.activation[v];
    Json utilities = Json::object();
    Json sigma = Json::object();
    for (std::size_t p = 0; p < instance.player_count(); ++p) {
        utilities[instance.player_name(p)] = format_rational(evaluation.utilities[p]);
        sigma[instance.player_name(p)] = evaluation.sigma[p];
    }
    doc["activation"] = std::move(activation);
    doc["utilities"] = std::move(utilities);
    doc["welfare"] = format_rational(evaluation.welfare);
    doc["sigma"] = std::move(sigma);
    doc["conflict_free"] = evaluation.conflict_free;
    return doc;
}

WeightedCompletionInput jobs_from_json(const Json& doc) {
    WeightedCompletionInput input;
    const Json& jobs = member(doc, "jobs", "jobs file");
    if (!jobs.is_array()) shape_error("jobs file: \"jobs\" must be an array");
    for (const Json& j : jobs) {
        Job job;
        job.id = string_of(member(j, "id", "job"), "job id");
        job.weight = j.contains("weight") ? rational_of(j.at("weight"), "weight of " + job.id) : Rational(1);
        input.jobs.push_back(std::move(job));
    }
    if (doc.contains("precedence")) input.precedence = pairs_of(doc.at("precedence"), "precedence");
    return input;
}

}  // namespace isg
