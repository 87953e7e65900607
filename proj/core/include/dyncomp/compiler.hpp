#pragma once

#include <string>
#include <vector>

#include "dyncomp/logic.hpp"
#include "dyncomp/pattern.hpp"
#include "dyncomp/program.hpp"

namespace dyncomp {

/// One disjunct of a union of conjunctive queries with inequalities over a
/// single binary relation E: existentially quantified variables 0..var_count-1,
/// E-atoms as index pairs, and equality / inequality constraints.
struct ConjunctiveQuery {
    int var_count = 0;
    std::set<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> eq;   // first < second
    std::set<std::pair<int, int>> neq;  // first < second

    auto operator<=>(const ConjunctiveQuery&) const = default;
};

/// Normalizes an existential sentence over E in which negation occurs only
/// in front of equalities into a union of conjunctive queries with
/// inequalities. Throws on universal quantifiers, negated relation atoms,
/// free variables, or non-variable atom arguments.
std::vector<ConjunctiveQuery> to_ucq_neq(const FormulaPtr& sentence);

/// The subgraph encoded by an all-distinct disjunct: one node per variable,
/// one directed edge per E-atom. The disjunct must not contain equalities.
SubgraphPattern pattern_of(const ConjunctiveQuery& cq);

/// Expands one disjunct by equality types: one all-distinct subgraph pattern
/// per set partition of the variables that respects the equality and
/// inequality constraints. Contradictory disjuncts yield no patterns.
std::vector<SubgraphPattern> expand_equality_types(const ConjunctiveQuery& cq);

/// Insertion-only quantifier-free program maintaining "the pattern embeds
/// injectively into the graph". One auxiliary relation per proper node
/// subset S: prefix+R_<S> holds a duplicate-free tuple ā iff ā (read at the
/// sorted positions of S) extends to the pattern with the remaining nodes
/// existential; the empty subset's relation prefix+Q is the query bit.
DynamicProgram compile_pattern(const SubgraphPattern& h, const std::string& prefix = "");

/// Full pipeline: UCQ normalization, equality-type expansion, per-pattern
/// compilation (pattern i gets prefix "p<i>_"), and disjoint union under a
/// fresh 0-ary query relation Q whose rule inlines the component bodies.
DynamicProgram compile_semipositive(const FormulaPtr& sentence);

}  // namespace dyncomp
