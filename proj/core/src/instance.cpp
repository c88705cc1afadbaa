#include "isg/instance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "isg/error.hpp"

namespace isg {
namespace {

constexpr std::int64_t kScaledBudget = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out) || out > kScaledBudget) {
        throw Error(ErrorCode::RewardOverflow, "rewards too large for exact 64-bit arithmetic");
    }
    return out;
}

}  // namespace

Instance Instance::validate(const RawInstance& raw) {
    Instance inst;
    const std::size_t k = raw.players.size();
    inst.q_ = k == 0 ? 0 : raw.players.front().services.size();

    for (const RawPlayer& p : raw.players) {
        if (p.services.size() != inst.q_) {
            throw Error(ErrorCode::UnequalServiceCounts,
                        "player '" + p.name + "' has " + std::to_string(p.services.size()) +
                            " services, expected " + std::to_string(inst.q_));
        }
        if (!inst.player_index_.emplace(p.name, inst.names_.size()).second) {
            throw Error(ErrorCode::DuplicateLabel, "duplicate player name '" + p.name + "'");
        }
        inst.names_.push_back(p.name);
        for (const RawService& s : p.services) {
            if (s.reward < Rational{0}) {
                throw Error(ErrorCode::NegativeReward, "service '" + s.id + "' has negative reward");
            }
            if (!inst.label_index_.emplace(s.id, inst.labels_.size()).second) {
                throw Error(ErrorCode::DuplicateLabel, "duplicate service id '" + s.id + "'");
            }
            inst.labels_.push_back(s.id);
            inst.rewards_.push_back(s.reward);
        }
    }

    const std::size_t n = inst.labels_.size();
    std::vector<Edge> base;
    base.reserve(raw.edges.size());
    for (const auto& [from, to] : raw.edges) {
        const auto u = inst.find_service(from);
        const auto v = inst.find_service(to);
        if (!u || !v) {
            throw Error(ErrorCode::UnknownEdgeEndpoint,
                        "edge (" + from + ", " + to + ") references an unknown service");
        }
        if (*u == *v) throw Error(ErrorCode::SelfEdge, "self-edge on '" + from + "'");
        base.push_back({*u, *v});
    }
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    inst.base_edges_ = std::move(base);
    inst.closed_edges_ = transitive_closure(inst.base_edges_, n);

    inst.preds_.assign(n, {});
    inst.succs_.assign(n, {});
    inst.reach_words_ = (n + 63) / 64;
    inst.reach_.assign(n * inst.reach_words_, 0);
    for (const Edge& e : inst.closed_edges_) {
        inst.preds_[e.to].push_back(e.from);
        inst.succs_[e.from].push_back(e.to);
        inst.reach_[e.from * inst.reach_words_ + e.to / 64] |= std::uint64_t{1} << (e.to % 64);
    }
    for (auto& p : inst.preds_) std::sort(p.begin(), p.end());

    inst.uniform_ = std::all_of(inst.rewards_.begin(), inst.rewards_.end(),
                                [](const Rational& r) { return r == Rational{1}; });

    std::int64_t scale = 1;
    for (const Rational& r : inst.rewards_) {
        const std::int64_t g = std::gcd(scale, r.denominator());
        scale = checked_mul(scale / g, r.denominator());
    }
    inst.scale_ = scale;
    std::int64_t total = 0;
    for (const Rational& r : inst.rewards_) {
        const std::int64_t s = checked_mul(r.numerator(), scale / r.denominator());
        inst.scaled_.push_back(s);
        total += s;
        checked_mul(total, std::max<std::int64_t>(1, static_cast<std::int64_t>(inst.q_)));
    }
    return inst;
}

std::optional<std::size_t> Instance::find_service(std::string_view label) const {
    const auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Instance::find_player(std::string_view name) const {
    const auto it = player_index_.find(std::string(name));
    if (it == player_index_.end()) return std::nullopt;
    return it->second;
}

Rational Instance::total_reward() const {
    return std::accumulate(rewards_.begin(), rewards_.end(), Rational{0});
}

bool Instance::depends_on(std::size_t v, std::size_t u) const {
    return (reach_[u * reach_words_ + v / 64] >> (v % 64)) & 1U;
}

RawInstance Instance::to_raw() const {
    RawInstance raw;
    for (std::size_t p = 0; p < player_count(); ++p) {
        RawPlayer player{names_[p], {}};
        for (std::size_t j = 0; j < q_; ++j) {
            const std::size_t v = p * q_ + j;
            player.services.push_back({labels_[v], rewards_[v]});
        }
        raw.players.push_back(std::move(player));
    }
    for (const Edge& e : base_edges_) raw.edges.emplace_back(labels_[e.from], labels_[e.to]);
    return raw;
}

}  // namespace isg
