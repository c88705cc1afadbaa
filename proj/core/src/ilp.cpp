#include "isg/ilp.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <unordered_set>

namespace isg {
namespace {

std::string sanitize(const std::string& raw) {
    std::string out;
    for (char c : raw) {
        out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    }
    return out.empty() ? "_" : out;
}

constexpr std::size_t kTermsPerLine = 8;

void write_terms(std::ostream& os, const std::vector<LinearTerm>& terms,
                 const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0 && i % kTermsPerLine == 0) os << "\n   ";
        const LinearTerm& t = terms[i];
        const std::int64_t mag = std::llabs(t.coefficient);
        if (i == 0) {
            if (t.coefficient < 0) os << "- ";
        } else {
            os << (t.coefficient < 0 ? " - " : " + ");
        }
        if (mag != 1) os << mag << ' ';
        os << names[t.variable];
    }
}

}  // namespace

std::vector<std::string> sanitized_labels(const Instance& instance) {
    std::vector<std::string> out;
    std::unordered_set<std::string> used;
    for (std::size_t v = 0; v < instance.service_count(); ++v) {
        std::string name = sanitize(instance.label(v));
        if (used.count(name) != 0) {
            const std::string stem = name + "_x" + std::to_string(v);
            name = stem;
            for (int extra = 0; used.count(name) != 0; ++extra) name = stem + "_" + std::to_string(extra);
        }
        used.insert(name);
        out.push_back(std::move(name));
    }
    return out;
}

IlpModel build_ilp_model(const Instance& instance) {
    const std::size_t n = instance.service_count();
    const std::size_t q = instance.services_per_player();
    const auto labels = sanitized_labels(instance);

    IlpModel m;
    m.services = n;
    m.steps = q;
    m.objective_scale = instance.reward_scale();
    m.variable_names.resize(2 * n * q);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t t = 1; t <= q; ++t) {
            m.variable_names[m.deploy_var(v, t)] = "s_" + labels[v] + "_" + std::to_string(t);
            m.variable_names[m.active_var(v, t)] = "a_" + labels[v] + "_" + std::to_string(t);
            m.objective.push_back({instance.scaled_reward(v), m.active_var(v, t)});
        }
    }

    for (std::size_t v = 0; v < n; ++v) {
        LinearConstraint c{"once_" + labels[v], {}, ConstraintSense::Equal, 1};
        for (std::size_t t = 1; t <= q; ++t) c.terms.push_back({1, m.deploy_var(v, t)});
        m.constraints.push_back(std::move(c));
    }
    const auto player_labels = [&] {
        std::vector<std::string> out;
        for (std::size_t p = 0; p < instance.player_count(); ++p) {
            out.push_back(sanitize(instance.player_name(p)) + "_p" + std::to_string(p + 1));
        }
        return out;
    }();
    for (std::size_t p = 0; p < instance.player_count(); ++p) {
        for (std::size_t t = 1; t <= q; ++t) {
            LinearConstraint c{"slot_" + player_labels[p] + "_" + std::to_string(t), {},
                               ConstraintSense::Equal, 1};
            for (std::size_t j = 0; j < q; ++j) c.terms.push_back({1, m.deploy_var(p * q + j, t)});
            m.constraints.push_back(std::move(c));
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t t = 1; t <= q; ++t) {
            LinearConstraint c{"deployed_" + labels[v] + "_" + std::to_string(t), {},
                               ConstraintSense::LessEqual, 0};
            c.terms.push_back({1, m.active_var(v, t)});
            for (std::size_t u = 1; u <= t; ++u) c.terms.push_back({-1, m.deploy_var(v, u)});
            m.constraints.push_back(std::move(c));
        }
    }
    for (const Edge& e : instance.closed_edges()) {
        for (std::size_t t = 1; t <= q; ++t) {
            LinearConstraint c{"prec_" + labels[e.from] + "_" + labels[e.to] + "_" + std::to_string(t), {},
                               ConstraintSense::LessEqual, 0};
            c.terms.push_back({1, m.active_var(e.to, t)});
            c.terms.push_back({-1, m.active_var(e.from, t)});
            m.constraints.push_back(std::move(c));
        }
    }
    return m;
}

std::string write_lp(const IlpModel& model) {
    std::ostringstream os;
    os << "\\ Interdependent scheduling game: welfare maximisation\n";
    os << "\\ objective scale " << model.objective_scale << "\n";
    os << "Maximize\n obj: ";
    write_terms(os, model.objective, model.variable_names);
    os << "\nSubject To\n";
    for (const LinearConstraint& c : model.constraints) {
        os << ' ' << c.name << ": ";
        write_terms(os, c.terms, model.variable_names);
        os << (c.sense == ConstraintSense::Equal ? " = " : " <= ") << c.rhs << '\n';
    }
    os << "Binary\n";
    for (const std::string& name : model.variable_names) os << ' ' << name << '\n';
    os << "End\n";
    return os.str();
}

}  // namespace isg
