#pragma once

#include <string>

#include "dyncomp/logic.hpp"
#include "dyncomp/structure.hpp"

namespace dyncomp {

/// Parse failure with 1-based line/column of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line(line),
          column(column) {}
    int line, column;
};

// Grammar (infix, loosest to tightest binding):
//   formula  := 'exists' IDENT formula | 'forall' IDENT formula | imp
//   imp      := or ('->' imp)?
//   or       := and ('|' and)*
//   and      := unary ('&' unary)*
//   unary    := '!' unary | atom
//   atom     := 'true' | 'false' | '(' formula ')'
//             | REL '(' terms? ')' | REL '{' term ',' term '}'
//             | term (('=' | '!=') term)?
//   term     := 'ite' '(' formula ',' term ',' term ')'
//             | IDENT ('(' terms? ')')?
// Identifiers are resolved against the schema: relation names before '(' or
// '{', function names before '(', constants, otherwise variables.
// R{s,t} is sugar for (R(s,t) | R(t,s)).
FormulaPtr parse_formula(const std::string& text, const Schema& schema);
TermPtr parse_term(const std::string& text, const Schema& schema);

}  // namespace dyncomp
