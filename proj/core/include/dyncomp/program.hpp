#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dyncomp/logic.hpp"
#include "dyncomp/pattern.hpp"
#include "dyncomp/structure.hpp"

namespace dyncomp {

/// One row of the update rule table.
struct RuleKey {
    std::string aux_symbol;
    ModKind kind;
    std::string input_relation;

    auto operator<=>(const RuleKey&) const = default;
};

struct UpdateRule {
    std::vector<std::string> mod_vars;    // x̄, bound to the modified tuple
    std::vector<std::string> tuple_vars;  // ȳ, bound to the updated tuple / argument point
    FormulaPtr formula;                   // for auxiliary relations
    TermPtr term;                         // for auxiliary functions
};

/// Initializer entry for a subgraph-extension relation: the relation holds a
/// duplicate-free tuple ā iff ā extends to H_{(ȳ,z̄)} in the initial graph.
/// Several entries for one relation combine disjunctively.
struct SubgraphInitEntry {
    std::string relation;
    SubgraphPattern pattern;
    std::vector<int> y_nodes;  // canonical (ascending) ȳ; complement is z̄
};

enum class PaddingVariant { Ternary, Binary };

struct PaddingInit {
    PaddingVariant variant = PaddingVariant::Ternary;
    int n_plus = 0;
    std::vector<bool> truth_table;  // indexed by adjacency-bitvector graph code
};

/// Named, serializable initialization strategy.
struct Initializer {
    enum class Kind { Empty, ThreeClique, SubgraphExtends, MaxOutdegree, Padding };

    Kind kind = Kind::Empty;
    std::vector<SubgraphInitEntry> entries;  // SubgraphExtends
    PaddingInit padding;                     // Padding
};

/// An update program with initialization mapping and designated query symbol.
/// Auxiliary constants are modeled as 0-ary auxiliary functions.
struct DynamicProgram {
    Schema input_schema;
    Schema aux_schema;
    std::map<RuleKey, UpdateRule> rules;
    Initializer initializer;
    std::string query_symbol;
    bool supports_insert = true;
    bool supports_delete = true;

    /// Maximum auxiliary relation arity.
    int arity() const;
    /// Quantifier-free rules and no auxiliary functions.
    bool is_dynprop() const;
    Schema combined_schema() const;
    bool supports(ModKind kind) const {
        return kind == ModKind::Insert ? supports_insert : supports_delete;
    }
    /// Every (aux symbol, supported kind, input relation) has exactly one
    /// rule of the right sort with well-scoped variables; throws otherwise.
    void validate() const;
};

/// A program state: one structure over the combined schema holding both the
/// current input database and the auxiliary database.
struct ProgramState {
    Structure structure;

    bool query_bit(const DynamicProgram& p) const;
};

/// Build the initial state for the given input database.
ProgramState init_state(const DynamicProgram& p, const Structure& input);

/// Apply one modification: all auxiliary symbols are re-interpreted against
/// the pre-step state (simultaneous update); the input database is modified.
ProgramState step(const DynamicProgram& p, const ProgramState& s, const Modification& m);

/// Left fold of step; errors carry the failing index.
ProgramState run(const DynamicProgram& p, const ProgramState& s, const ModSequence& ms);

/// The input-schema part of a state (same domain).
Structure input_part(const DynamicProgram& p, const ProgramState& s);

struct DifftestParams {
    int domain_size = 5;
    int sequences = 100;
    int length = 10;
    std::uint64_t seed = 0;
    bool allow_loops = true;
};

struct DifftestMismatch {
    int sequence;
    int prefix;  // number of modifications applied; 0 = initialization
    bool expected, got;
    ModSequence mods;  // the divergent prefix
};

struct DifftestReport {
    DifftestParams params;
    long checks = 0;
    std::vector<DifftestMismatch> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/// Differential test of p against static evaluation of the sentence it
/// claims to maintain. Pseudorandom modification sequences (duplicates
/// included) start from the empty input database; after every prefix the
/// query bit is compared with static_eval on the current input.
/// Deterministic for a given seed.
DifftestReport difftest(const DynamicProgram& p, const FormulaPtr& sentence,
                        const DifftestParams& params);

}  // namespace dyncomp
