#pragma once

#include "dyncomp/program.hpp"

namespace dyncomp {

/// Hand-written insertion-only program maintaining "the graph contains three
/// pairwise adjacent nodes" (adjacency read undirected): binary R holds the
/// distinct pairs with a common neighbor, Q flips once R reaches an inserted
/// edge. Correct on loop-free modification sequences.
DynamicProgram builtin_three_clique();

/// The sentence the three-clique program maintains.
FormulaPtr three_clique_sentence();

/// Program with auxiliary functions maintaining the unary query "x has
/// maximal outdegree" via clamped counters: numEdges(x) = outdegree of x,
/// numNodes(m) = number of nodes of outdegree m, maxdeg = current maximum,
/// all read as positions in the domain order. Counters clamp at n-1, so
/// answers are exact only while every maintained count stays below n; the
/// differential test below excludes saturated prefixes.
DynamicProgram builtin_max_outdegree();

/// Differential test of builtin_max_outdegree against recomputation: after
/// every prefix the full Q relation is compared with the argmax set of the
/// recomputed outdegrees. A sequence is skipped from the first prefix where
/// some outdegree reaches n or some outdegree value >= 1 is shared by all n
/// nodes (counter saturation); mismatches elsewhere are reported.
DifftestReport difftest_max_outdegree(int domain_size, int sequences, int length,
                                      std::uint64_t seed);

}  // namespace dyncomp
