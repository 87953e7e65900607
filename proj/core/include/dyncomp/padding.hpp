#pragma once

#include <cstdint>

#include "dyncomp/program.hpp"

namespace dyncomp {

/// Address arithmetic for the padded domain D = D⁺ ⊎ D⁻ used by the
/// bounded-arity padding construction. Graphs over the n-element part D⁺
/// are coded as adjacency bitvectors (bit i*n+j set iff edge from the i-th
/// to the j-th element of D⁺). D⁻ holds one element per graph code; the
/// binary variant appends one intermediate element per (code, node, kind)
/// for the two-stage pointer moves.
struct PaddingLayout {
    PaddingVariant variant = PaddingVariant::Ternary;
    int n_plus = 0;

    std::uint64_t num_graphs() const { return std::uint64_t{1} << (n_plus * n_plus); }
    std::size_t domain_size() const {
        std::size_t d = static_cast<std::size_t>(n_plus) + num_graphs();
        if (variant == PaddingVariant::Binary) d += num_graphs() * 2 * n_plus;
        return d;
    }

    // The two addressing helpers return positions in the domain order; index
    // into Structure::domain() to get element ids.
    ElementId graph_element(std::uint64_t code) const {
        return static_cast<ElementId>(n_plus + code);
    }
    /// Element standing for "graph `code`, first argument = i-th node,
    /// pending insert/delete" (binary variant only).
    ElementId intermediate(std::uint64_t code, int node, ModKind kind) const {
        return static_cast<ElementId>(n_plus + num_graphs() + code * (2 * n_plus) + 2 * node +
                                      (kind == ModKind::Delete ? 1 : 0));
    }

    std::uint64_t edge_bit(int from, int to) const {
        return std::uint64_t{1} << (from * n_plus + to);
    }
    std::uint64_t code_with(std::uint64_t code, int from, int to, ModKind kind) const {
        return kind == ModKind::Insert ? code | edge_bit(from, to) : code & ~edge_bit(from, to);
    }
    /// Code of the current input graph (edges of E among the first n⁺
    /// elements of the state's domain).
    std::uint64_t code_of(const Structure& db) const;
};

/// Program maintaining an arbitrary graph query given by its truth table,
/// with constant-size auxiliary formulas: the padded part of the domain
/// stores one element per possible graph plus a pointer to the current one.
/// The ternary variant moves the pointer with one ternary function
/// application per step; the binary variant with two binary ones.
DynamicProgram build_padding_program(PaddingVariant variant, int n_plus,
                                     std::vector<bool> truth_table);

/// Fills the auxiliary symbols of a freshly built padded state whose input
/// part is already in place. Used by init_state.
void init_padding_aux(const PaddingInit& init, Structure& state);

struct PaddingCheckReport {
    long checks = 0;
    std::vector<DifftestMismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/// Differential test of a padding program: pseudorandom modification
/// sequences over D⁺ only; after every prefix the query bit is compared with
/// the truth table at the current graph's code and the pointer function p is
/// checked to address exactly that code's element.
PaddingCheckReport difftest_padding(const DynamicProgram& p, int sequences, int length,
                                    std::uint64_t seed);

/// Convenience wrapper: builds the program for a pseudorandom truth table
/// (one fair bit per graph code, drawn from oracle_seed) and tests it.
PaddingCheckReport difftest_padding(PaddingVariant variant, int n_plus, std::uint64_t oracle_seed,
                                    int sequences, int length, std::uint64_t seed);

}  // namespace dyncomp
