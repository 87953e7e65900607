#include "dyncomp/parse.hpp"

#include <cctype>
#include <vector>

namespace dyncomp {

namespace {

struct Token {
    enum class Kind { Ident, Punct, End };
    Kind kind;
    std::string text;
    int line, column;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto bump = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            bump(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            out.push_back({Token::Kind::Ident, text.substr(i, j - i), line, col});
            bump(j - i);
            continue;
        }
        // two-char punctuation first
        if (text.compare(i, 2, "->") == 0 || text.compare(i, 2, "!=") == 0) {
            out.push_back({Token::Kind::Punct, text.substr(i, 2), line, col});
            bump(2);
            continue;
        }
        if (std::string("()&|!={},").find(c) != std::string::npos) {
            out.push_back({Token::Kind::Punct, std::string(1, c), line, col});
            bump(1);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const Schema& schema)
        : toks_(tokenize(text)), schema_(schema) {}

    FormulaPtr formula() {
        if (ident_is("exists") || ident_is("forall")) {
            bool is_exists = peek().text == "exists";
            advance();
            std::string v = expect_ident("quantified variable");
            FormulaPtr body = formula();
            return is_exists ? exists(v, body) : forall(v, body);
        }
        return implication();
    }

    TermPtr term() {
        if (ident_is("ite")) {
            advance();
            expect("(");
            FormulaPtr cond = formula();
            expect(",");
            TermPtr a = term();
            expect(",");
            TermPtr b = term();
            expect(")");
            return ite(cond, a, b);
        }
        const Token& tk = peek();
        std::string name = expect_ident("term");
        if (punct_is("(")) {
            if (!schema_.has_function(name))
                throw ParseError("unknown function '" + name + "'", tk.line, tk.column);
            return dyncomp::apply(name, term_list());
        }
        if (schema_.has_relation(name))
            throw ParseError("relation '" + name + "' used as a term", tk.line, tk.column);
        if (schema_.has_constant(name)) return cst(name);
        if (schema_.has_function(name)) {
            if (schema_.function_arity(name) != 0)
                throw ParseError("function '" + name + "' needs arguments", tk.line, tk.column);
            return apply(name, {});
        }
        return var(name);
    }

    void finish(const char* what) {
        if (peek().kind != Token::Kind::End)
            throw ParseError(std::string("trailing input after ") + what, peek().line,
                             peek().column);
    }

private:
    FormulaPtr implication() {
        FormulaPtr lhs = disjunction();
        if (punct_is("->")) {
            advance();
            return implies(lhs, formula_after_arrow());
        }
        return lhs;
    }

    FormulaPtr formula_after_arrow() {
        // right associative; quantifiers still allowed on the right
        return formula();
    }

    FormulaPtr disjunction() {
        std::vector<FormulaPtr> parts{conjunction()};
        while (punct_is("|")) {
            advance();
            parts.push_back(conjunction());
        }
        return lor(std::move(parts));
    }

    FormulaPtr conjunction() {
        std::vector<FormulaPtr> parts{unary()};
        while (punct_is("&")) {
            advance();
            parts.push_back(unary());
        }
        return land(std::move(parts));
    }

    FormulaPtr unary() {
        if (punct_is("!")) {
            advance();
            return lnot(unary());
        }
        return atom();
    }

    FormulaPtr atom() {
        if (punct_is("(")) {
            advance();
            FormulaPtr f = formula();
            expect(")");
            return f;
        }
        if (ident_is("true") || ident_is("false")) {
            bool v = peek().text == "true";
            advance();
            return truth(v);
        }
        if (ident_is("exists") || ident_is("forall")) return formula();
        const Token& tk = peek();
        if (tk.kind == Token::Kind::Ident && schema_.has_relation(tk.text)) {
            std::string name = tk.text;
            advance();
            if (punct_is("{")) {
                advance();
                TermPtr a = term();
                expect(",");
                TermPtr b = term();
                expect("}");
                return lor({rel(name, {a, b}), rel(name, {b, a})});
            }
            return rel(name, term_list());
        }
        TermPtr lhs = term();
        if (punct_is("=")) {
            advance();
            return eq(lhs, term());
        }
        if (punct_is("!=")) {
            advance();
            return neq(lhs, term());
        }
        throw ParseError("expected '=' or '!=' after term", peek().line, peek().column);
    }

    std::vector<TermPtr> term_list() {
        expect("(");
        std::vector<TermPtr> out;
        if (punct_is(")")) {
            advance();
            return out;
        }
        out.push_back(term());
        while (punct_is(",")) {
            advance();
            out.push_back(term());
        }
        expect(")");
        return out;
    }

    const Token& peek() const { return toks_[pos_]; }
    void advance() { ++pos_; }
    bool punct_is(const std::string& p) const {
        return peek().kind == Token::Kind::Punct && peek().text == p;
    }
    bool ident_is(const std::string& w) const {
        return peek().kind == Token::Kind::Ident && peek().text == w;
    }
    void expect(const std::string& p) {
        if (!punct_is(p))
            throw ParseError("expected '" + p + "'", peek().line, peek().column);
        advance();
    }
    std::string expect_ident(const char* what) {
        if (peek().kind != Token::Kind::Ident)
            throw ParseError(std::string("expected ") + what, peek().line, peek().column);
        std::string s = peek().text;
        advance();
        return s;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Schema& schema_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Schema& schema) {
    Parser p(text, schema);
    FormulaPtr f = p.formula();
    p.finish("formula");
    return f;
}

TermPtr parse_term(const std::string& text, const Schema& schema) {
    Parser p(text, schema);
    TermPtr t = p.term();
    p.finish("term");
    return t;
}

}  // namespace dyncomp
