#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyncomp {

/// Error raised by all operations on malformed inputs.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

using ElementId = std::uint32_t;

/// A domain element: an id unique within its structure plus a display label.
struct Element {
    ElementId id;
    std::string label;
};

/// Relation, constant and function symbols with arities. Names are pairwise
/// distinct across the three kinds. Constants are kept separate from 0-ary
/// functions in the API for readability.
class Schema {
public:
    Schema() = default;

    void add_relation(const std::string& name, int arity);
    void add_constant(const std::string& name);
    void add_function(const std::string& name, int arity);

    bool has_relation(const std::string& name) const { return relations_.count(name) != 0; }
    bool has_constant(const std::string& name) const { return constants_.count(name) != 0; }
    bool has_function(const std::string& name) const { return functions_.count(name) != 0; }

    int relation_arity(const std::string& name) const;
    int function_arity(const std::string& name) const;

    const std::map<std::string, int>& relations() const { return relations_; }
    const std::set<std::string>& constants() const { return constants_; }
    const std::map<std::string, int>& functions() const { return functions_; }

    /// Maximum relation arity (0 if there are no relations).
    int max_relation_arity() const;

    /// Disjoint union of two schemas; throws on a name clash.
    static Schema merge(const Schema& a, const Schema& b);

    bool operator==(const Schema& other) const = default;

private:
    void check_fresh(const std::string& name) const;

    std::map<std::string, int> relations_;
    std::set<std::string> constants_;
    std::map<std::string, int> functions_;
};

/// A total function interpretation stored as a default value plus explicit
/// exceptions, so large padded domains stay representable.
struct FunctionInterp {
    ElementId def = 0;
    std::map<std::vector<ElementId>, ElementId> except;

    ElementId value(const std::vector<ElementId>& args) const {
        auto it = except.find(args);
        return it == except.end() ? def : it->second;
    }
    void set(const std::vector<ElementId>& args, ElementId v) {
        if (v == def)
            except.erase(args);
        else
            except[args] = v;
    }
    bool operator==(const FunctionInterp& other) const = default;
};

/// kind of a single modification: tuple insertion or deletion.
enum class ModKind { Insert, Delete };

/// Insertion or deletion of a tuple into a named input relation.
struct Modification {
    ModKind kind;
    std::string relation;
    std::vector<ElementId> tuple;

    bool operator==(const Modification& other) const = default;
};

using ModSequence = std::vector<Modification>;

/// A finite structure: domain, schema and interpretations. Structures are
/// immutable values after construction; operations return fresh copies.
/// The domain order (ascending id, i.e. creation order) is the order used
/// wherever an operation speaks of ordered tuples, unless the caller
/// supplies another one.
class Structure {
public:
    Structure() = default;

    /// Domain of n fresh elements with labels (defaults to e0..e{n-1}).
    Structure(Schema schema, std::size_t n);
    Structure(Schema schema, const std::vector<std::string>& labels);
    /// Explicit elements; ids must be strictly increasing.
    Structure(Schema schema, const std::vector<Element>& elements);

    const Schema& schema() const { return schema_; }
    const std::vector<ElementId>& domain() const { return domain_; }
    std::size_t size() const { return domain_.size(); }
    bool in_domain(ElementId e) const;

    const std::string& label(ElementId e) const;
    ElementId element(const std::string& label) const;
    std::optional<ElementId> find_element(const std::string& label) const;

    const std::set<std::vector<ElementId>>& relation(const std::string& name) const;
    bool holds(const std::string& relation, const std::vector<ElementId>& tuple) const;
    void set_relation(const std::string& name, std::set<std::vector<ElementId>> content);
    void add_tuple(const std::string& relation, const std::vector<ElementId>& tuple);
    void remove_tuple(const std::string& relation, const std::vector<ElementId>& tuple);

    ElementId constant(const std::string& name) const;
    void set_constant(const std::string& name, ElementId value);

    const FunctionInterp& function(const std::string& name) const;
    FunctionInterp& function(const std::string& name);
    ElementId apply_function(const std::string& name, const std::vector<ElementId>& args) const;

    /// All tuples of the given arity over the domain, in lexicographic
    /// domain order.
    std::vector<std::vector<ElementId>> all_tuples(int arity) const;

    bool operator==(const Structure& other) const;

private:
    void check_tuple(const std::string& relation, const std::vector<ElementId>& tuple) const;

    Schema schema_;
    std::vector<ElementId> domain_;  // ascending ids; defines the element order
    std::map<ElementId, std::string> labels_;
    std::map<std::string, ElementId> by_label_;
    std::map<std::string, std::set<std::vector<ElementId>>> relations_;
    std::map<std::string, ElementId> constants_;
    std::map<std::string, FunctionInterp> functions_;
};

/// Canonical set of atomic formulas over x_1..x_k and the constant names,
/// restricted to function-free atoms. Two tuples have equal types iff the
/// sorted atom lists coincide.
struct AtomicType {
    std::vector<std::string> atoms;  // sorted canonical renderings

    std::string key() const;
    bool operator==(const AtomicType& other) const = default;
    auto operator<=>(const AtomicType& other) const = default;
};

/// Applies one modification to an input database. Inserting a present tuple
/// and deleting an absent one are silent no-ops.
Structure apply_modification(const Structure& db, const Modification& m);

/// Substructure induced by d. Throws when d misses a constant or is not
/// closed under some function.
Structure induced_substructure(const Structure& s, const std::set<ElementId>& d);

/// The k-ary atomic type of the tuple in s.
AtomicType atomic_type(const Structure& s, const std::vector<ElementId>& tuple);

/// Full-structure isomorphism test; returns the lexicographically least
/// witness (as a map from a's elements to b's) under element id order.
std::optional<std::map<ElementId, ElementId>> find_isomorphism(const Structure& a,
                                                               const Structure& b);

}  // namespace dyncomp
