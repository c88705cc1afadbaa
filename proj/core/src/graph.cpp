#include "isg/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>

#include "isg/error.hpp"

namespace isg {

std::vector<std::size_t> topological_order(std::span<const Edge> edges, std::size_t vertex_count) {
    std::vector<std::vector<std::size_t>> out(vertex_count);
    std::vector<std::size_t> in_degree(vertex_count, 0);
    for (const Edge& e : edges) {
        if (e.from >= vertex_count || e.to >= vertex_count) {
            throw Error(ErrorCode::UnknownEdgeEndpoint, "edge endpoint out of range");
        }
        if (e.from == e.to) {
            throw Error(ErrorCode::CyclicDependencies,
                        "self-loop on vertex " + std::to_string(e.from));
        }
        out[e.from].push_back(e.to);
        ++in_degree[e.to];
    }

    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < vertex_count; ++v) {
        if (in_degree[v] == 0) ready.push(v);
    }
    std::vector<std::size_t> order;
    order.reserve(vertex_count);
    while (!ready.empty()) {
        const std::size_t v = ready.top();
        ready.pop();
        order.push_back(v);
        for (std::size_t w : out[v]) {
            if (--in_degree[w] == 0) ready.push(w);
        }
    }
    if (order.size() != vertex_count) {
        const auto stuck = std::find_if(in_degree.begin(), in_degree.end(),
                                        [](std::size_t d) { return d > 0; });
        throw Error(ErrorCode::CyclicDependencies,
                    "dependency cycle through vertex " +
                        std::to_string(std::distance(in_degree.begin(), stuck)));
    }
    return order;
}

std::vector<Edge> transitive_closure(std::span<const Edge> edges, std::size_t vertex_count) {
    const auto order = topological_order(edges, vertex_count);

    std::vector<std::vector<std::size_t>> out(vertex_count);
    for (const Edge& e : edges) out[e.from].push_back(e.to);

    // reach[v] is a bitset over all vertices reachable from v by a non-empty path.
    const std::size_t words = (vertex_count + 63) / 64;
    std::vector<std::uint64_t> reach(vertex_count * words, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t v = *it;
        std::uint64_t* row = reach.data() + v * words;
        for (std::size_t w : out[v]) {
            row[w / 64] |= std::uint64_t{1} << (w % 64);
            const std::uint64_t* child = reach.data() + w * words;
            for (std::size_t i = 0; i < words; ++i) row[i] |= child[i];
        }
    }

    std::vector<Edge> closed;
    for (std::size_t v = 0; v < vertex_count; ++v) {
        const std::uint64_t* row = reach.data() + v * words;
        for (std::size_t w = 0; w < vertex_count; ++w) {
            if ((row[w / 64] >> (w % 64)) & 1U) closed.push_back({v, w});
        }
    }
    return closed;
}

}  // namespace isg
