#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "dyncomp/program.hpp"

namespace dyncomp {

/// Iterated exponential: tower(1, n) = n, tower(k+1, n) = 2^tower(k, n).
boost::multiprecision::cpp_int tower(int k, int n);

/// Total coloring of the k-subsets of {0..n-1}; subsets are ranked in
/// lexicographic order of their sorted element vectors.
struct HyperedgeColoring {
    int n = 0, k = 0;
    int num_colors = 1;
    std::vector<int> colors;  // indexed by subset rank

    static std::vector<std::vector<int>> subsets(int n, int k);  // lexicographic
    static std::size_t rank(int n, const std::vector<int>& subset);

    int color(const std::vector<int>& subset) const { return colors[rank(n, subset)]; }
};

/// Colors the k-subsets of s's domain (in domain order) by the atomic type
/// of the ordered tuple; returns the coloring and the type key per color.
std::pair<HyperedgeColoring, std::vector<std::string>> color_by_type(const Structure& s, int k);

/// Exact backtracking search for a monochromatic clique of the given size;
/// returns the lexicographically least witness (ascending node indices).
std::optional<std::vector<int>> find_monochromatic_clique(const HyperedgeColoring& c, int size);

/// Subset of size >= target all of whose ascending k-tuples (k = maximum
/// relation arity) share one atomic type; color_by_type + clique search,
/// verified post-hoc. Returns domain elements.
std::optional<std::vector<ElementId>> ordered_tau_clique(const Structure& s, int target);

/// Seeded random search for a 2-coloring of the k-subsets of {0..n-1}
/// without a monochromatic clique of the given size; every returned
/// coloring is verified exactly. budget = number of colorings tried.
std::optional<HyperedgeColoring> search_antiramsey_coloring(int n, int k, int size,
                                                            std::uint64_t seed, int budget);

enum class LowerBoundVariant { Clique, Eafo };

/// The graph D = A ⊎ C with one C-element per (k+1)-subset of A and an edge
/// from c_b to every member of b for the chosen subsets b ∈ B. The eafo
/// variant adds constants s, t and an edge (s, c_b) per b ∈ B.
struct LowerBoundInstance {
    Structure structure;
    int k = 1;
    LowerBoundVariant variant = LowerBoundVariant::Clique;
    std::vector<ElementId> a;                // the base elements in domain order
    std::map<std::set<int>, ElementId> c;    // (k+1)-subset of positions in a -> C element
    std::set<std::set<int>> b, b_prime;      // chosen subsets and their complement
};

LowerBoundInstance build_lowerbound_instance(const std::vector<std::string>& a_labels,
                                             const std::set<std::set<int>>& b, int k,
                                             LowerBoundVariant variant);

/// Modification sequence completing one subset: clique variant inserts the
/// pairs (b_i, b_j), i<j, ordered by (i, j); eafo variant inserts (b_i, t)
/// in ascending order.
ModSequence completion_sequence(const LowerBoundInstance& inst, const std::set<int>& subset);

/// The query of the ∃*∀* lower bound: some neighbor x of s dominates every
/// node with an edge into t.
FormulaPtr eafo_sentence();

struct LemmaVerdict {
    bool holds = true;
    std::string detail;
};

/// Preserved-substructure check for quantifier-free programs: with
/// pi an isomorphism between the induced substructures of S on a and of T
/// on b, pi-respecting sequences alpha and beta (same kinds and relations,
/// beta tuples the pi-images) keep the restricted states isomorphic via the
/// same pi. Preconditions are verified and failures reported as verdicts.
LemmaVerdict check_substructure_lemma(const DynamicProgram& p, const ProgramState& s,
                                      const ProgramState& t, const std::vector<ElementId>& a,
                                      const std::vector<ElementId>& b,
                                      const std::map<ElementId, ElementId>& pi,
                                      const ModSequence& alpha, const ModSequence& beta);

/// N^m(A): values of all terms of depth <= m with arguments from A; includes
/// constants (depth-0 terms).
std::set<ElementId> neighborhood(const Structure& s, const std::set<ElementId>& a, int m);

/// m-similarity of tuples: the bijection mapping term values over ā to the
/// corresponding term values over b̄, when it is well defined, bijective and
/// preserves every relation on the m-neighborhoods.
std::optional<std::map<ElementId, ElementId>> m_similar(const Structure& s, const Structure& t,
                                                        const std::vector<ElementId>& a,
                                                        const std::vector<ElementId>& b, int m);

/// Subset of size >= target all of whose ascending k-tuples are pairwise
/// m-similar: tuples are grouped by the atomic type of their m-neighborhood
/// vector, the grouping is handed to the ordered-type clique search, and
/// the result is verified by exhaustive pairwise m_similar checks.
/// Functions of s must be unary.
std::optional<std::vector<ElementId>> find_similar_tuples(const Structure& s, int m, int target);

/// Variant of the substructure check for programs with auxiliary functions:
/// the tuples must be m-similar before the updates and are checked for
/// 0-similarity afterwards; the pi-respecting discipline additionally
/// confines modified tuples to the similarity bijection's domain.
LemmaVerdict check_substructure_lemma_qf(const DynamicProgram& p, const ProgramState& s,
                                         const ProgramState& t, const std::vector<ElementId>& a,
                                         const std::vector<ElementId>& b, int m,
                                         const ModSequence& alpha, const ModSequence& beta);

}  // namespace dyncomp
