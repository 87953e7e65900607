#include "dyncomp/logic.hpp"

#include <algorithm>

namespace dyncomp {

TermPtr var(const std::string& name) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Variable;
    t->name = name;
    return t;
}

TermPtr cst(const std::string& name) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Constant;
    t->name = name;
    return t;
}

TermPtr apply(const std::string& fn, std::vector<TermPtr> args) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Apply;
    t->name = fn;
    t->args = std::move(args);
    return t;
}

TermPtr ite(FormulaPtr cond, TermPtr if_true, TermPtr if_false) {
    if (!quantifier_free(cond)) throw Error("ite: condition must be quantifier-free");
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Ite;
    t->cond = std::move(cond);
    t->if_true = std::move(if_true);
    t->if_false = std::move(if_false);
    return t;
}

FormulaPtr truth(bool value) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Boolean;
    f->value = value;
    return f;
}

FormulaPtr rel(const std::string& name, std::vector<TermPtr> args) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::RelAtom;
    f->name = name;
    f->terms = std::move(args);
    return f;
}

FormulaPtr eq(TermPtr lhs, TermPtr rhs) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Equal;
    f->terms = {std::move(lhs), std::move(rhs)};
    return f;
}

FormulaPtr neq(TermPtr lhs, TermPtr rhs) { return lnot(eq(std::move(lhs), std::move(rhs))); }

FormulaPtr lnot(FormulaPtr f) {
    auto out = std::make_shared<Formula>();
    out->kind = Formula::Kind::Not;
    out->subs = {std::move(f)};
    return out;
}

FormulaPtr land(std::vector<FormulaPtr> fs) {
    if (fs.empty()) return truth(true);
    if (fs.size() == 1) return fs.front();
    auto out = std::make_shared<Formula>();
    out->kind = Formula::Kind::And;
    out->subs = std::move(fs);
    return out;
}

FormulaPtr lor(std::vector<FormulaPtr> fs) {
    if (fs.empty()) return truth(false);
    if (fs.size() == 1) return fs.front();
    auto out = std::make_shared<Formula>();
    out->kind = Formula::Kind::Or;
    out->subs = std::move(fs);
    return out;
}

FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs) {
    auto out = std::make_shared<Formula>();
    out->kind = Formula::Kind::Implies;
    out->subs = {std::move(lhs), std::move(rhs)};
    return out;
}

static FormulaPtr quantify(Formula::Kind kind, const std::string& v, FormulaPtr body) {
    auto out = std::make_shared<Formula>();
    out->kind = kind;
    out->name = v;
    out->subs = {std::move(body)};
    return out;
}

FormulaPtr exists(const std::string& v, FormulaPtr body) {
    return quantify(Formula::Kind::Exists, v, std::move(body));
}

FormulaPtr forall(const std::string& v, FormulaPtr body) {
    return quantify(Formula::Kind::Forall, v, std::move(body));
}

ElementId eval_term(const Structure& s, const TermPtr& t, const Assignment& a) {
    switch (t->kind) {
        case Term::Kind::Variable: {
            auto it = a.find(t->name);
            if (it == a.end()) throw Error("eval: unbound variable '" + t->name + "'");
            return it->second;
        }
        case Term::Kind::Constant:
            return s.constant(t->name);
        case Term::Kind::Apply: {
            std::vector<ElementId> args;
            args.reserve(t->args.size());
            for (const auto& arg : t->args) args.push_back(eval_term(s, arg, a));
            return s.apply_function(t->name, args);
        }
        case Term::Kind::Ite:
            return eval_formula(s, t->cond, a) ? eval_term(s, t->if_true, a)
                                               : eval_term(s, t->if_false, a);
    }
    throw Error("eval: corrupt term");
}

bool eval_formula(const Structure& s, const FormulaPtr& f, const Assignment& a) {
    switch (f->kind) {
        case Formula::Kind::Boolean:
            return f->value;
        case Formula::Kind::RelAtom: {
            std::vector<ElementId> args;
            args.reserve(f->terms.size());
            for (const auto& t : f->terms) args.push_back(eval_term(s, t, a));
            return s.holds(f->name, args);
        }
        case Formula::Kind::Equal:
            return eval_term(s, f->terms[0], a) == eval_term(s, f->terms[1], a);
        case Formula::Kind::Not:
            return !eval_formula(s, f->subs[0], a);
        case Formula::Kind::And:
            for (const auto& g : f->subs)
                if (!eval_formula(s, g, a)) return false;
            return true;
        case Formula::Kind::Or:
            for (const auto& g : f->subs)
                if (eval_formula(s, g, a)) return true;
            return false;
        case Formula::Kind::Implies:
            return !eval_formula(s, f->subs[0], a) || eval_formula(s, f->subs[1], a);
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            const bool is_exists = f->kind == Formula::Kind::Exists;
            Assignment inner = a;
            for (ElementId e : s.domain()) {
                inner[f->name] = e;
                if (eval_formula(s, f->subs[0], inner) == is_exists) return is_exists;
            }
            return !is_exists;
        }
    }
    throw Error("eval: corrupt formula");
}

bool static_eval(const Structure& s, const FormulaPtr& sentence) {
    if (!free_variables(sentence).empty())
        throw Error("static_eval: sentence has free variables");
    return eval_formula(s, sentence, {});
}

bool quantifier_free(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Variable:
        case Term::Kind::Constant:
            return true;
        case Term::Kind::Apply:
            return std::all_of(t->args.begin(), t->args.end(),
                               [](const TermPtr& a) { return quantifier_free(a); });
        case Term::Kind::Ite:
            return quantifier_free(t->cond) && quantifier_free(t->if_true) &&
                   quantifier_free(t->if_false);
    }
    return false;
}

bool quantifier_free(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            return false;
        case Formula::Kind::Boolean:
            return true;
        case Formula::Kind::RelAtom:
        case Formula::Kind::Equal:
            return std::all_of(f->terms.begin(), f->terms.end(),
                               [](const TermPtr& t) { return quantifier_free(t); });
        default:
            return std::all_of(f->subs.begin(), f->subs.end(),
                               [](const FormulaPtr& g) { return quantifier_free(g); });
    }
}

static void collect_free(const TermPtr& t, const std::set<std::string>& bound,
                         std::set<std::string>& out);
static void collect_free(const FormulaPtr& f, std::set<std::string> bound,
                         std::set<std::string>& out) {
    switch (f->kind) {
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            bound.insert(f->name);
            collect_free(f->subs[0], bound, out);
            return;
        default:
            for (const auto& t : f->terms) collect_free(t, bound, out);
            for (const auto& g : f->subs) collect_free(g, bound, out);
    }
}

static void collect_free(const TermPtr& t, const std::set<std::string>& bound,
                         std::set<std::string>& out) {
    switch (t->kind) {
        case Term::Kind::Variable:
            if (!bound.count(t->name)) out.insert(t->name);
            return;
        case Term::Kind::Constant:
            return;
        case Term::Kind::Apply:
            for (const auto& a : t->args) collect_free(a, bound, out);
            return;
        case Term::Kind::Ite:
            collect_free(t->cond, bound, out);
            collect_free(t->if_true, bound, out);
            collect_free(t->if_false, bound, out);
            return;
    }
}

std::set<std::string> free_variables(const FormulaPtr& f) {
    std::set<std::string> out;
    collect_free(f, {}, out);
    return out;
}

std::set<std::string> free_variables(const TermPtr& t) {
    std::set<std::string> out;
    collect_free(t, {}, out);
    return out;
}

int term_depth(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Variable:
        case Term::Kind::Constant:
            return 0;
        case Term::Kind::Apply: {
            int d = 0;
            for (const auto& a : t->args) d = std::max(d, term_depth(a));
            return 1 + d;
        }
        case Term::Kind::Ite:
            throw Error("term_depth: ite terms have no neighborhood depth");
    }
    throw Error("term_depth: corrupt term");
}

std::vector<TermPtr> enumerate_terms(const Schema& schema,
                                     const std::vector<std::string>& vars, int m) {
    if (m < 0) throw Error("enumerate_terms: negative depth");
    std::vector<TermPtr> all;     // canonical order
    std::vector<int> depth_of;    // depth of all[i]
    for (const auto& v : vars) {
        all.push_back(var(v));
        depth_of.push_back(0);
    }
    for (const auto& c : schema.constants()) {
        all.push_back(cst(c));
        depth_of.push_back(0);
    }
    std::size_t level_start = 0;
    for (int d = 1; d <= m; ++d) {
        std::size_t level_end = all.size();
        for (const auto& [fname, ar] : schema.functions()) {
            if (ar == 0) {
                if (d == 1) {
                    all.push_back(apply(fname, {}));
                    depth_of.push_back(1);
                }
                continue;
            }
            // argument tuples over terms of depth <= d-1, at least one of
            // depth exactly d-1, lexicographic by index
            std::vector<std::size_t> idx(ar, 0);
            if (level_end == 0) continue;
            while (true) {
                bool fresh = false;
                for (int i = 0; i < ar; ++i)
                    if (depth_of[idx[i]] == d - 1) fresh = true;
                if (fresh) {
                    std::vector<TermPtr> args;
                    for (int i = 0; i < ar; ++i) args.push_back(all[idx[i]]);
                    all.push_back(apply(fname, std::move(args)));
                    depth_of.push_back(d);
                }
                int pos = ar - 1;
                while (pos >= 0 && ++idx[pos] == level_end) idx[pos--] = 0;
                if (pos < 0) break;
            }
        }
        level_start = level_end;
    }
    (void)level_start;
    return all;
}

std::string to_text(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Variable:
        case Term::Kind::Constant:
            return t->name;
        case Term::Kind::Apply: {
            std::string out = t->name + "(";
            for (std::size_t i = 0; i < t->args.size(); ++i) {
                if (i) out += ",";
                out += to_text(t->args[i]);
            }
            return out + ")";
        }
        case Term::Kind::Ite:
            return "ite(" + to_text(t->cond) + "," + to_text(t->if_true) + "," +
                   to_text(t->if_false) + ")";
    }
    throw Error("to_text: corrupt term");
}

namespace {

// precedence: implies(1) < or(2) < and(3) < not(4) < atom
int precedence(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Implies:
            return 1;
        case Formula::Kind::Or:
            return 2;
        case Formula::Kind::And:
            return 3;
        case Formula::Kind::Not:
            return 4;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            return 0;
        default:
            return 5;
    }
}

std::string render(const FormulaPtr& f, int parent_prec) {
    std::string out;
    int prec = precedence(f);
    switch (f->kind) {
        case Formula::Kind::Boolean:
            out = f->value ? "true" : "false";
            break;
        case Formula::Kind::RelAtom: {
            out = f->name + "(";
            for (std::size_t i = 0; i < f->terms.size(); ++i) {
                if (i) out += ",";
                out += to_text(f->terms[i]);
            }
            out += ")";
            break;
        }
        case Formula::Kind::Equal:
            out = to_text(f->terms[0]) + " = " + to_text(f->terms[1]);
            break;
        case Formula::Kind::Not:
            // render !(a = b) as a != b
            if (f->subs[0]->kind == Formula::Kind::Equal) {
                out = to_text(f->subs[0]->terms[0]) + " != " + to_text(f->subs[0]->terms[1]);
                prec = 5;
            } else {
                out = "!" + render(f->subs[0], prec);
            }
            break;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            const char* op = f->kind == Formula::Kind::And ? " & " : " | ";
            for (std::size_t i = 0; i < f->subs.size(); ++i) {
                if (i) out += op;
                out += render(f->subs[i], prec + 1);
            }
            break;
        }
        case Formula::Kind::Implies:
            out = render(f->subs[0], prec + 1) + " -> " + render(f->subs[1], prec);
            break;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            out = (f->kind == Formula::Kind::Exists ? "exists " : "forall ") + f->name + " " +
                  render(f->subs[0], 0);
            break;
    }
    if (prec < parent_prec) out = "(" + out + ")";
    return out;
}

}  // namespace

std::string to_text(const FormulaPtr& f) { return render(f, 0); }

bool equal(const TermPtr& a, const TermPtr& b) {
    if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size())
        return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
    if (a->kind == Term::Kind::Ite)
        return equal(a->cond, b->cond) && equal(a->if_true, b->if_true) &&
               equal(a->if_false, b->if_false);
    return true;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a->kind != b->kind || a->value != b->value || a->name != b->name ||
        a->terms.size() != b->terms.size() || a->subs.size() != b->subs.size())
        return false;
    for (std::size_t i = 0; i < a->terms.size(); ++i)
        if (!equal(a->terms[i], b->terms[i])) return false;
    for (std::size_t i = 0; i < a->subs.size(); ++i)
        if (!equal(a->subs[i], b->subs[i])) return false;
    return true;
}

}  // namespace dyncomp
