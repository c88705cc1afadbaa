#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "isg/best_response.hpp"
#include "isg/canned.hpp"
#include "isg/equilibrium.hpp"
#include "isg/error.hpp"
#include "isg/evaluate.hpp"
#include "isg/generator.hpp"
#include "isg/ilp.hpp"
#include "isg/json_io.hpp"
#include "isg/reductions.hpp"
#include "isg/welfare.hpp"

namespace isg::cli {
namespace {

struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    // global
    std::uint64_t cap = SearchLimits{}.cap;
    std::uint64_t seed = 0;
    std::string tiebreak = "lowest";
    unsigned threads = 1;
    bool pretty = false;

    std::string instance;
    std::string profile;
    std::string player;
    std::string method = "auto";
    std::string csv;
    bool summary = false;
    std::string start;
    std::string policy = "round-robin";
    std::size_t max_iters = 1000;
    std::string threshold;
    std::string out;

    std::size_t k = 2;
    std::size_t q = 3;
    std::string rewards = "uniform";
    double edge_prob = 0.5;
    std::size_t max_children = 2;
    std::string cnf;
    std::string jobs;
    std::string name;
    std::string canned_profile;
};

class Session {
public:
    Session(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

    std::unique_ptr<CLI::App> build();
    void run_selected() const;

private:
    using Handler = std::function<void()>;

    CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& description,
                   Handler handler) {
        CLI::App* sub = parent->add_subcommand(name, description);
        handlers_.emplace_back(sub, std::move(handler));
        return sub;
    }

    SearchLimits limits() const { return {opt_.cap, opt_.threads}; }
    Tiebreak tiebreak() const {
        return opt_.tiebreak == "highest" ? Tiebreak::HighestIndex : Tiebreak::LowestIndex;
    }

    std::string read_input(const std::string& path) const;
    Instance load_instance() const { return instance_from_json(parse_json_text(read_input(opt_.instance))); }
    Profile load_profile(const Instance& inst, const std::string& path) const {
        return profile_from_json(parse_json_text(read_input(path)), inst);
    }
    void write_file(const std::string& path, const std::string& text) const;
    void emit(const Json& doc) const { out_ << (opt_.pretty ? doc.dump(2) : doc.dump()) << '\n'; }
    Json labels(const Instance& inst, std::size_t player, std::span<const std::size_t> order) const;
    Json rational(const Rational& r) const { return format_rational(r); }

    void cmd_validate() const;
    void cmd_eval() const;
    void cmd_br() const;
    void cmd_pne_construct() const;
    void cmd_pne_verify() const;
    void cmd_pne_enumerate() const;
    void cmd_dynamics() const;
    void cmd_welfare(WelfareMethod method) const;
    void cmd_emit_lp() const;
    void cmd_analyze(bool anarchy) const;
    void cmd_gen_random() const;
    void cmd_gen_cnf(ReductionKind kind) const;
    void cmd_gen_wct() const;
    void cmd_gen_canned() const;
    void emit_reduction(const ReductionCertificate& cert) const;

    std::istream& in_;
    std::ostream& out_;
    Options opt_;
    std::vector<std::pair<CLI::App*, Handler>> handlers_;
};

std::unique_ptr<CLI::App> Session::build() {
    auto app = std::make_unique<CLI::App>("Interdependent scheduling games: evaluation, equilibria, welfare, generators.",
                                          "isg");
    app->require_subcommand(1);
    app->fallthrough();
    app->add_option("--cap", opt_.cap, "Limit on enumerated orders or profiles")->capture_default_str();
    app->add_option("--seed", opt_.seed, "Seed for random generation")->capture_default_str();
    app->add_option("--tiebreak", opt_.tiebreak, "Greedy tie rule")
        ->check(CLI::IsMember({"lowest", "highest"}))
        ->capture_default_str();
    app->add_option("--threads", opt_.threads, "Worker threads for enumeration")->capture_default_str();
    app->add_flag("--pretty", opt_.pretty, "Indent JSON output");

    auto instance_opt = [this](CLI::App* sub) {
        sub->add_option("--instance", opt_.instance, "Instance JSON file, - for stdin")->required();
    };

    CLI::App* validate = leaf(app.get(), "validate", "Check an instance file", [this] { cmd_validate(); });
    instance_opt(validate);

    CLI::App* eval = leaf(app.get(), "eval", "Evaluate a strategy profile", [this] { cmd_eval(); });
    instance_opt(eval);
    eval->add_option("--profile", opt_.profile, "Profile JSON file (default: index order)");

    CLI::App* br = leaf(app.get(), "br", "Best response of one player", [this] { cmd_br(); });
    instance_opt(br);
    br->add_option("--profile", opt_.profile, "Profile JSON file")->required();
    br->add_option("--player", opt_.player, "Responding player name")->required();
    br->add_option("--method", opt_.method, "auto picks greedy for uniform rewards")
        ->check(CLI::IsMember({"auto", "greedy", "exact", "oracle"}))
        ->capture_default_str();

    CLI::App* pne = app->add_subcommand("pne", "Pure Nash equilibria");
    pne->require_subcommand(1);
    CLI::App* construct = leaf(pne, "construct", "Build an equilibrium (uniform rewards)",
                               [this] { cmd_pne_construct(); });
    instance_opt(construct);
    CLI::App* verify = leaf(pne, "verify", "Check whether a profile is an equilibrium",
                            [this] { cmd_pne_verify(); });
    instance_opt(verify);
    verify->add_option("--profile", opt_.profile, "Profile JSON file")->required();
    CLI::App* enumerate = leaf(pne, "enumerate", "List every equilibrium", [this] { cmd_pne_enumerate(); });
    instance_opt(enumerate);
    enumerate->add_option("--csv", opt_.csv, "Also write profile,welfare,is_pne rows to this file");
    enumerate->add_flag("--summary", opt_.summary, "Add profile count and welfare extremes");

    CLI::App* dynamics = leaf(app.get(), "dynamics", "Best-response dynamics", [this] { cmd_dynamics(); });
    instance_opt(dynamics);
    dynamics->add_option("--start", opt_.start, "Starting profile file (default: index order)");
    dynamics->add_option("--policy", opt_.policy, "Who responds next")
        ->check(CLI::IsMember({"round-robin", "first-improving"}))
        ->capture_default_str();
    dynamics->add_option("--max-iters", opt_.max_iters, "Limit on applied responses")->capture_default_str();

    CLI::App* welfare = app->add_subcommand("welfare", "Maximum welfare");
    welfare->require_subcommand(1);
    const std::pair<const char*, WelfareMethod> welfare_methods[] = {
        {"exact", WelfareMethod::BranchAndBound},
        {"oracle", WelfareMethod::Oracle},
        {"single", WelfareMethod::SinglePlayer},
    };
    for (const auto& [name, method] : welfare_methods) {
        CLI::App* sub = leaf(welfare, name,
                             method == WelfareMethod::BranchAndBound ? "Branch and bound"
                             : method == WelfareMethod::Oracle       ? "Exhaustive scan"
                                                                     : "Single-player instances",
                             [this, method = method] { cmd_welfare(method); });
        instance_opt(sub);
        sub->add_option("--threshold", opt_.threshold, "Report whether the optimum reaches this value");
    }

    CLI::App* lp = leaf(app.get(), "emit-lp", "Write the welfare integer program", [this] { cmd_emit_lp(); });
    instance_opt(lp);
    lp->add_option("--out", opt_.out, "LP file (default: stdout)");

    CLI::App* analyze = app->add_subcommand("analyze", "Efficiency of equilibria");
    analyze->require_subcommand(1);
    instance_opt(leaf(analyze, "poa", "Price of anarchy", [this] { cmd_analyze(true); }));
    instance_opt(leaf(analyze, "pos", "Price of stability", [this] { cmd_analyze(false); }));

    CLI::App* gen = app->add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    CLI::App* random = leaf(gen, "random", "Seeded random instance", [this] { cmd_gen_random(); });
    random->add_option("--k", opt_.k, "Players")->capture_default_str();
    random->add_option("--q", opt_.q, "Services per player")->capture_default_str();
    random->add_option("--rewards", opt_.rewards, "uniform or LO:HI")->capture_default_str();
    random->add_option("--edge-prob", opt_.edge_prob, "Probability of each candidate edge")->capture_default_str();
    random->add_option("--max-children", opt_.max_children, "Largest forward offset")->capture_default_str();
    CLI::App* min2sat = leaf(gen, "min2sat", "Welfare game from a 2CNF",
                             [this] { cmd_gen_cnf(ReductionKind::Min2Sat); });
    min2sat->add_option("--cnf", opt_.cnf, "DIMACS file")->required();
    CLI::App* threesat = leaf(gen, "3sat", "Equilibrium-existence game from a 3CNF",
                              [this] { cmd_gen_cnf(ReductionKind::ThreeSat); });
    threesat->add_option("--cnf", opt_.cnf, "DIMACS file")->required();
    CLI::App* wct = leaf(gen, "wct", "Single-player game from weighted jobs", [this] { cmd_gen_wct(); });
    wct->add_option("--jobs", opt_.jobs, "Jobs JSON file")->required();
    CLI::App* canned_cmd = leaf(gen, "canned", "Built-in instance", [this] { cmd_gen_canned(); });
    canned_cmd->add_option("--name", opt_.name, "Instance name")->required();
    canned_cmd->add_option("--k", opt_.k, "Players (poa_family)");
    canned_cmd->add_option("--q", opt_.q, "Services per player (poa_family)");
    canned_cmd->add_option("--profile", opt_.canned_profile, "Emit this named profile instead");

    return app;
}

void Session::run_selected() const {
    for (const auto& [sub, handler] : handlers_) {
        if (sub->parsed()) {
            handler();
            return;
        }
    }
    throw UsageFailure("no command given");
}

std::string Session::read_input(const std::string& path) const {
    if (path == "-") return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoFailure("cannot read " + path);
    std::ostringstream text;
    text << file.rdbuf();
    if (file.bad()) throw IoFailure("error reading " + path);
    return text.str();
}

void Session::write_file(const std::string& path, const std::string& text) const {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoFailure("cannot write " + path);
    file << text;
    file.flush();
    if (!file) throw IoFailure("error writing " + path);
}

Json Session::labels(const Instance& inst, std::size_t player, std::span<const std::size_t> order) const {
    Json list = Json::array();
    for (std::size_t local : order) list.push_back(inst.label(inst.index_of({player, local})));
    return list;
}

void Session::cmd_validate() const {
    const Instance inst = load_instance();
    emit(Json{{"valid", true},
              {"players", inst.player_count()},
              {"services_per_player", inst.services_per_player()},
              {"uniform_rewards", inst.uniform_rewards()},
              {"edges", inst.base_edges().size()},
              {"closed_edges", inst.closed_edges().size()},
              {"total_reward", rational(inst.total_reward())}});
}

void Session::cmd_eval() const {
    const Instance inst = load_instance();
    const Profile profile = opt_.profile.empty() ? Profile::identity(inst) : load_profile(inst, opt_.profile);
    Json doc{{"schedule", schedule_to_json(inst, profile)}};
    const Json report = evaluation_to_json(inst, evaluate(inst, profile));
    for (const auto& [key, value] : report.items()) doc[key] = value;
    emit(doc);
}

void Session::cmd_br() const {
    const Instance inst = load_instance();
    const auto player = inst.find_player(opt_.player);
    if (!player) throw Error(ErrorCode::UnknownPlayer, "unknown player " + opt_.player);
    const Profile profile = load_profile(inst, opt_.profile);

    BestResponseResult result;
    if (opt_.method == "greedy") {
        result = greedy_best_response(inst, profile, *player, tiebreak());
    } else if (opt_.method == "exact") {
        result = exact_best_response(inst, profile, *player, limits());
    } else if (opt_.method == "oracle") {
        result = brute_force_best_response(inst, profile, *player, limits());
    } else {
        result = best_response(inst, profile, *player, limits(), tiebreak());
    }
    const Rational current = evaluate(inst, profile).utilities[*player];
    emit(Json{{"player", inst.player_name(*player)},
              {"method", to_string(result.method)},
              {"schedule", labels(inst, *player, result.schedule)},
              {"value", rational(result.value)},
              {"current", rational(current)},
              {"gap", rational(result.value - current)}});
}

void Session::cmd_pne_construct() const {
    const Instance inst = load_instance();
    const Profile profile = construct_pne_uniform(inst);
    const PneVerification check = verify_pne(inst, profile, limits());
    emit(Json{{"schedule", schedule_to_json(inst, profile)},
              {"welfare", rational(evaluate(inst, profile).welfare)},
              {"is_pne", check.is_pne}});
}

void Session::cmd_pne_verify() const {
    const Instance inst = load_instance();
    const Profile profile = load_profile(inst, opt_.profile);
    const PneVerification check = verify_pne(inst, profile, limits());
    Json gaps = Json::object();
    for (std::size_t p = 0; p < inst.player_count(); ++p) gaps[inst.player_name(p)] = rational(check.gaps[p]);
    emit(Json{{"is_pne", check.is_pne}, {"worst_gap", rational(check.worst_gap)}, {"gaps", std::move(gaps)}});
}

void Session::cmd_pne_enumerate() const {
    const Instance inst = load_instance();
    std::ostringstream csv;
    ProfileVisitor visit;
    if (!opt_.csv.empty()) {
        csv << "profile,welfare,is_pne\n";
        visit = [&](const Profile& profile, const Rational& welfare, bool is_pne) {
            for (std::size_t p = 0; p < inst.player_count(); ++p) {
                if (p > 0) csv << '|';
                const auto order = profile.order(p);
                for (std::size_t t = 0; t < order.size(); ++t) {
                    if (t > 0) csv << ' ';
                    csv << inst.label(inst.index_of({p, order[t]}));
                }
            }
            csv << ',' << format_rational(welfare) << ',' << (is_pne ? "true" : "false") << '\n';
        };
    }
    const EquilibriumSummary summary = enumerate_equilibria(inst, limits(), visit);
    if (!opt_.csv.empty()) write_file(opt_.csv, csv.str());

    Json doc{{"pne", Json::array()}};
    for (const Profile& profile : summary.equilibria) doc["pne"].push_back(schedule_to_json(inst, profile));
    if (opt_.summary) {
        doc["profiles"] = summary.profiles;
        doc["max_welfare"] = rational(summary.max_welfare);
        doc["best_pne_welfare"] = summary.best_pne_welfare ? rational(*summary.best_pne_welfare) : Json();
        doc["worst_pne_welfare"] = summary.worst_pne_welfare ? rational(*summary.worst_pne_welfare) : Json();
    }
    emit(doc);
}

void Session::cmd_dynamics() const {
    const Instance inst = load_instance();
    const Profile start = opt_.start.empty() ? Profile::identity(inst) : load_profile(inst, opt_.start);
    const DynamicsPolicy policy =
        opt_.policy == "first-improving" ? DynamicsPolicy::FirstImproving : DynamicsPolicy::RoundRobin;
    const DynamicsTrace trace = best_response_dynamics(inst, start, policy, opt_.max_iters, limits(), tiebreak());

    Json steps = Json::array();
    for (const DynamicsStep& step : trace.steps) {
        steps.push_back({{"player", inst.player_name(step.player)},
                         {"old", rational(step.old_value)},
                         {"new", rational(step.new_value)},
                         {"schedule", schedule_to_json(inst, step.profile)}});
    }
    const Profile& last = trace.steps.empty() ? trace.start : trace.steps.back().profile;
    emit(Json{{"policy", to_string(policy)},
              {"outcome", to_string(trace.outcome)},
              {"period", trace.period},
              {"iterations", trace.steps.size()},
              {"steps", std::move(steps)},
              {"final", schedule_to_json(inst, last)}});
}

void Session::cmd_welfare(WelfareMethod method) const {
    const Instance inst = load_instance();
    std::optional<Rational> threshold;
    if (!opt_.threshold.empty()) threshold = parse_rational(opt_.threshold);
    WelfareResult result;
    switch (method) {
        case WelfareMethod::BranchAndBound: result = maximize_welfare_exact(inst, limits()); break;
        case WelfareMethod::Oracle: result = brute_force_welfare(inst, limits()); break;
        case WelfareMethod::SinglePlayer: result = maximize_welfare_single_player(inst, limits()); break;
    }
    Json doc{{"method", to_string(result.method)},
             {"value", rational(result.value)},
             {"schedule", schedule_to_json(inst, result.profile)},
             {"proof_of_optimality", result.proof_of_optimality}};
    if (threshold) {
        doc["threshold"] = rational(*threshold);
        doc["meets_threshold"] = meets_threshold(result, *threshold);
    }
    emit(doc);
}

void Session::cmd_emit_lp() const {
    const Instance inst = load_instance();
    const IlpModel model = build_ilp_model(inst);
    const std::string text = write_lp(model);
    if (opt_.out.empty()) {
        out_ << text;
        return;
    }
    write_file(opt_.out, text);
    emit(Json{{"out", opt_.out},
              {"variables", model.variable_names.size()},
              {"constraints", model.constraints.size()},
              {"objective_scale", model.objective_scale}});
}

void Session::cmd_analyze(bool anarchy) const {
    const Instance inst = load_instance();
    const EquilibriumSummary summary = enumerate_equilibria(inst, limits());
    const Rational value = anarchy ? price_of_anarchy(summary) : price_of_stability(summary);
    const Rational& reference = anarchy ? *summary.worst_pne_welfare : *summary.best_pne_welfare;
    emit(Json{{"measure", anarchy ? "poa" : "pos"},
              {"value", rational(value)},
              {"max_welfare", rational(summary.max_welfare)},
              {"equilibrium_welfare", rational(reference)},
              {"profiles", summary.profiles},
              {"equilibria", summary.equilibria.size()}});
}

void Session::cmd_gen_random() const {
    RandomInstanceParams params;
    params.players = opt_.k;
    params.services_per_player = opt_.q;
    params.edge_prob = opt_.edge_prob;
    params.max_children = opt_.max_children;
    params.seed = opt_.seed;
    if (opt_.rewards == "uniform") {
        params.reward_mode = RewardMode::Uniform;
    } else {
        const auto colon = opt_.rewards.find(':');
        if (colon == std::string::npos) throw UsageFailure("--rewards expects uniform or LO:HI");
        try {
            std::size_t used_lo = 0, used_hi = 0;
            const std::string lo = opt_.rewards.substr(0, colon), hi = opt_.rewards.substr(colon + 1);
            params.reward_lo = std::stoll(lo, &used_lo);
            params.reward_hi = std::stoll(hi, &used_hi);
            if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument(opt_.rewards);
        } catch (const std::logic_error&) {
            throw UsageFailure("--rewards expects uniform or LO:HI, got " + opt_.rewards);
        }
        params.reward_mode = RewardMode::Range;
    }
    const Instance inst = random_instance(params);
    Json doc = instance_to_json(inst);
    doc["meta"] = {{"kind", "random"},
                   {"seed", params.seed},
                   {"engine", kRandomEngineId},
                   {"params",
                    {{"k", params.players},
                     {"q", params.services_per_player},
                     {"rewards", opt_.rewards},
                     {"edge_prob", params.edge_prob},
                     {"max_children", params.max_children}}}};
    emit(doc);
}

void Session::emit_reduction(const ReductionCertificate& cert) const {
    Json doc = instance_to_json(cert.instance);
    Json thresholds;
    if (cert.threshold_base) {
        thresholds = {{"base", rational(*cert.threshold_base)}, {"formula", cert.threshold_formula}};
    }
    Json mapping = Json::object();
    for (const auto& [source, services] : cert.mapping) mapping[source] = services;
    doc["meta"] = {{"kind", to_string(cert.kind)},
                   {"seed", nullptr},
                   {"thresholds", std::move(thresholds)},
                   {"mapping", std::move(mapping)}};
    emit(doc);
}

void Session::cmd_gen_cnf(ReductionKind kind) const {
    const CnfFormula formula = parse_dimacs(read_input(opt_.cnf));
    emit_reduction(kind == ReductionKind::Min2Sat ? reduce_min2sat(formula) : reduce_3sat(formula));
}

void Session::cmd_gen_wct() const {
    emit_reduction(reduce_weighted_completion(jobs_from_json(parse_json_text(read_input(opt_.jobs)))));
}

void Session::cmd_gen_canned() const {
    const CannedInstance c = canned(opt_.name, CannedParams{opt_.k, opt_.q});
    if (!opt_.canned_profile.empty()) {
        const auto it = c.profiles.find(opt_.canned_profile);
        if (it == c.profiles.end()) {
            throw Error(ErrorCode::InvalidParams, opt_.name + " has no profile " + opt_.canned_profile);
        }
        emit(profile_to_json(c.instance, it->second));
        return;
    }
    Json doc = instance_to_json(c.instance);
    Json profiles = Json::array();
    for (const auto& entry : c.profiles) profiles.push_back(entry.first);
    doc["meta"] = {{"kind", "canned"}, {"name", c.name}, {"seed", nullptr}, {"profiles", std::move(profiles)}};
    emit(doc);
}

void report(std::ostream& err, std::string_view code, const std::string& message) {
    err << Json{{"error", code}, {"message", message}}.dump() << '\n';
}

void collect_flags(const CLI::App& app, std::vector<std::string> path,
                   std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& out) {
    std::vector<std::string> flags;
    for (const CLI::Option* option : app.get_options()) {
        for (const std::string& name : option->get_lnames()) flags.push_back("--" + name);
    }
    out.emplace_back(path, std::move(flags));
    for (const CLI::App* sub : app.get_subcommands({})) {
        std::vector<std::string> child = path;
        child.push_back(sub->get_name());
        collect_flags(*sub, std::move(child), out);
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Session session(in, out);
    const std::unique_ptr<CLI::App> app = session.build();
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app->parse(reversed);
        session.run_selected();
        return kOk;
    } catch (const CLI::CallForHelp&) {
        out << app->help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app->help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        report(err, "UsageError", e.what());
        return kUsage;
    } catch (const UsageFailure& e) {
        report(err, "UsageError", e.what());
        return kUsage;
    } catch (const IoFailure& e) {
        report(err, "IoError", e.what());
        return kIo;
    } catch (const Error& e) {
        report(err, to_string(e.code()), e.what());
        return e.code() == ErrorCode::SizeGuardExceeded ? kSizeGuard : kDomain;
    } catch (const nlohmann::json::exception& e) {
        report(err, to_string(ErrorCode::ParseError), e.what());
        return kDomain;
    } catch (const std::exception& e) {
        report(err, "InternalError", e.what());
        return 1;
    }
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> command_flags() {
    std::istringstream in;
    std::ostringstream out;
    Session session(in, out);
    const std::unique_ptr<CLI::App> app = session.build();
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> table;
    collect_flags(*app, {}, table);
    return table;
}

}  // namespace isg::cli
