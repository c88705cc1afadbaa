#pragma once

#include <cstddef>
#include <compare>
#include <span>
#include <vector>

namespace isg {

// Directed edge between dense vertex indices; `from` must be deployed before `to` activates.
struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Kahn's algorithm with smallest-index-first tie breaking. Throws
// Error(CyclicDependencies) if the graph has a cycle.
std::vector<std::size_t> topological_order(std::span<const Edge> edges, std::size_t vertex_count);

// Smallest transitive superset of `edges`, sorted and duplicate-free.
std::vector<Edge> transitive_closure(std::span<const Edge> edges, std::size_t vertex_count);

}  // namespace isg
