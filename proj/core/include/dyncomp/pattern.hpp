#pragma once

#include <set>
#include <utility>
#include <vector>

#include "dyncomp/structure.hpp"

namespace dyncomp {

/// Directed subgraph pattern over variable nodes 0..node_count-1.
/// Self-loops are allowed (they arise from merged equality types).
struct SubgraphPattern {
    int node_count = 0;
    std::set<std::pair<int, int>> edges;

    bool operator==(const SubgraphPattern& other) const = default;
    auto operator<=>(const SubgraphPattern& other) const = default;
};

/// Split (ȳ, z̄) of a pattern's nodes; every node appears exactly once.
struct Partition {
    std::vector<int> y;
    std::vector<int> z;
};

/// Does the duplicate-free tuple a extend to H_{(ȳ,z̄)} in g? Brute-force
/// search for a completion b̄ whose entries are distinct from each other and
/// from a, mapping every edge of H outside ȳ onto an edge of g.
bool extends_to(const Structure& g, const std::vector<ElementId>& a, const SubgraphPattern& h,
                const Partition& part);

}  // namespace dyncomp
