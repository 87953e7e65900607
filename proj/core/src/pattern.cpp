#include "dyncomp/pattern.hpp"

#include <algorithm>

namespace dyncomp {

namespace {

bool complete(const Structure& g, const SubgraphPattern& h, const Partition& part,
              std::vector<ElementId>& image, const std::vector<int>& node_pos,
              std::size_t next) {
    if (next == part.z.size()) {
        // all nodes placed; check every edge of H outside ȳ
        std::set<int> yset(part.y.begin(), part.y.end());
        for (const auto& [from, to] : h.edges) {
            if (yset.count(from) && yset.count(to)) continue;  // removed in H_{(ȳ,z̄)}
            if (!g.holds("E", {image[node_pos[from]], image[node_pos[to]]})) return false;
        }
        return true;
    }
    for (ElementId e : g.domain()) {
        bool used = false;
        for (std::size_t i = 0; i < part.y.size() + next; ++i)
            if (image[i] == e) used = true;
        if (used) continue;
        image[part.y.size() + next] = e;
        if (complete(g, h, part, image, node_pos, next + 1)) return true;
    }
    return false;
}

}  // namespace

bool extends_to(const Structure& g, const std::vector<ElementId>& a, const SubgraphPattern& h,
                const Partition& part) {
    if (static_cast<int>(part.y.size() + part.z.size()) != h.node_count)
        throw Error("extends_to: partition does not cover the pattern");
    if (a.size() != part.y.size()) throw Error("extends_to: tuple arity mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] == a[j]) throw Error("extends_to: tuple must be duplicate-free");
    {
        std::set<int> seen;
        for (int v : part.y) seen.insert(v);
        for (int v : part.z) seen.insert(v);
        if (static_cast<int>(seen.size()) != h.node_count)
            throw Error("extends_to: partition repeats or misses a node");
    }
    // node -> position in the concatenated (ȳ, z̄) image vector
    std::vector<int> node_pos(h.node_count, -1);
    for (std::size_t i = 0; i < part.y.size(); ++i) node_pos[part.y[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < part.z.size(); ++i)
        node_pos[part.z[i]] = static_cast<int>(part.y.size() + i);
    std::vector<ElementId> image(h.node_count);
    std::copy(a.begin(), a.end(), image.begin());
    return complete(g, h, part, image, node_pos, 0);
}

}  // namespace dyncomp
