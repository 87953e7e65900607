#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dyncomp/structure.hpp"

namespace dyncomp {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Function term: variable | constant | function application | if-then-else.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { Variable, Constant, Apply, Ite };

    Kind kind;
    std::string name;           // Variable / Constant / Apply
    std::vector<TermPtr> args;  // Apply
    FormulaPtr cond;            // Ite
    TermPtr if_true, if_false;  // Ite
};

/// First-order formula; the quantifier-free fragment is identified
/// syntactically via quantifier_free().
struct Formula {
    enum class Kind { Boolean, RelAtom, Equal, Not, And, Or, Implies, Exists, Forall };

    Kind kind;
    bool value = false;             // Boolean
    std::string name;               // RelAtom relation / bound variable
    std::vector<TermPtr> terms;     // RelAtom args / Equal operands
    std::vector<FormulaPtr> subs;   // connective children / quantifier body
};

/// Variable binding used during evaluation.
using Assignment = std::map<std::string, ElementId>;

// --- term and formula builders ---
TermPtr var(const std::string& name);
TermPtr cst(const std::string& name);
TermPtr apply(const std::string& fn, std::vector<TermPtr> args);
TermPtr ite(FormulaPtr cond, TermPtr if_true, TermPtr if_false);

FormulaPtr truth(bool value);
FormulaPtr rel(const std::string& name, std::vector<TermPtr> args);
FormulaPtr eq(TermPtr lhs, TermPtr rhs);
FormulaPtr neq(TermPtr lhs, TermPtr rhs);
FormulaPtr lnot(FormulaPtr f);
FormulaPtr land(std::vector<FormulaPtr> fs);   // empty -> true
FormulaPtr lor(std::vector<FormulaPtr> fs);    // empty -> false
FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr exists(const std::string& v, FormulaPtr body);
FormulaPtr forall(const std::string& v, FormulaPtr body);

/// Compositional term value; ite evaluates its condition first and then
/// exactly the chosen branch.
ElementId eval_term(const Structure& s, const TermPtr& t, const Assignment& a);

/// Standard first-order semantics; quantifiers range over domain(s).
bool eval_formula(const Structure& s, const FormulaPtr& f, const Assignment& a);

/// eval_formula with the empty assignment; throws when free variables exist.
bool static_eval(const Structure& s, const FormulaPtr& sentence);

bool quantifier_free(const FormulaPtr& f);
bool quantifier_free(const TermPtr& t);

std::set<std::string> free_variables(const FormulaPtr& f);
std::set<std::string> free_variables(const TermPtr& t);

/// Nesting depth: variables and constants have depth 0,
/// depth(apply) = 1 + max argument depth. Ite is rejected.
int term_depth(const TermPtr& t);

/// All ite-free terms of depth <= m over the given variables, the schema's
/// constants and functions, in a fixed canonical order: depth levels in
/// increasing order; inside a level, function symbols by name, argument
/// tuples lexicographically by the enumeration index of earlier levels.
std::vector<TermPtr> enumerate_terms(const Schema& schema,
                                     const std::vector<std::string>& vars, int m);

/// Deterministic plain-text rendering; parseable by parse_formula/parse_term.
std::string to_text(const FormulaPtr& f);
std::string to_text(const TermPtr& t);

/// Structural equality.
bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace dyncomp
