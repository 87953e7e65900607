#include "dyncomp/structure.hpp"

#include <algorithm>
#include <sstream>

namespace dyncomp {

void Schema::check_fresh(const std::string& name) const {
    if (relations_.count(name) || constants_.count(name) || functions_.count(name))
        throw Error("schema: duplicate symbol name '" + name + "'");
}

void Schema::add_relation(const std::string& name, int arity) {
    if (arity < 0) throw Error("schema: negative arity for '" + name + "'");
    check_fresh(name);
    relations_[name] = arity;
}

void Schema::add_constant(const std::string& name) {
    check_fresh(name);
    constants_.insert(name);
}

void Schema::add_function(const std::string& name, int arity) {
    if (arity < 0) throw Error("schema: negative arity for '" + name + "'");
    check_fresh(name);
    functions_[name] = arity;
}

int Schema::relation_arity(const std::string& name) const {
    auto it = relations_.find(name);
    if (it == relations_.end()) throw Error("schema: unknown relation '" + name + "'");
    return it->second;
}

int Schema::function_arity(const std::string& name) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) throw Error("schema: unknown function '" + name + "'");
    return it->second;
}

int Schema::max_relation_arity() const {
    int m = 0;
    for (const auto& [name, ar] : relations_) m = std::max(m, ar);
    return m;
}

Schema Schema::merge(const Schema& a, const Schema& b) {
    Schema out = a;
    for (const auto& [name, ar] : b.relations_) out.add_relation(name, ar);
    for (const auto& name : b.constants_) out.add_constant(name);
    for (const auto& [name, ar] : b.functions_) out.add_function(name, ar);
    return out;
}

Structure::Structure(Schema schema, std::size_t n)
    : Structure(std::move(schema), [n] {
          std::vector<std::string> labels;
          for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
          return labels;
      }()) {}

Structure::Structure(Schema schema, const std::vector<std::string>& labels)
    : Structure(std::move(schema), [&labels] {
          std::vector<Element> elems;
          for (std::size_t i = 0; i < labels.size(); ++i)
              elems.push_back({static_cast<ElementId>(i), labels[i]});
          return elems;
      }()) {}

Structure::Structure(Schema schema, const std::vector<Element>& elements)
    : schema_(std::move(schema)) {
    for (const auto& el : elements) {
        if (!domain_.empty() && el.id <= domain_.back())
            throw Error("structure: element ids must be strictly increasing");
        domain_.push_back(el.id);
        labels_[el.id] = el.label;
        if (!by_label_.emplace(el.label, el.id).second)
            throw Error("structure: duplicate element label '" + el.label + "'");
    }
    for (const auto& [name, ar] : schema_.relations()) relations_[name] = {};
    for (const auto& [name, ar] : schema_.functions()) {
        FunctionInterp f;
        f.def = domain_.empty() ? 0 : domain_.front();
        functions_[name] = f;
    }
    // constants start unset; set_constant must be called before use
}

bool Structure::in_domain(ElementId e) const {
    return std::binary_search(domain_.begin(), domain_.end(), e);
}

const std::string& Structure::label(ElementId e) const {
    auto it = labels_.find(e);
    if (it == labels_.end()) throw Error("structure: unknown element id");
    return it->second;
}

ElementId Structure::element(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) throw Error("structure: unknown element label '" + label + "'");
    return it->second;
}

std::optional<ElementId> Structure::find_element(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

const std::set<std::vector<ElementId>>& Structure::relation(const std::string& name) const {
    auto it = relations_.find(name);
    if (it == relations_.end()) throw Error("structure: unknown relation '" + name + "'");
    return it->second;
}

bool Structure::holds(const std::string& relation, const std::vector<ElementId>& tuple) const {
    return this->relation(relation).count(tuple) != 0;
}

void Structure::check_tuple(const std::string& relation,
                            const std::vector<ElementId>& tuple) const {
    if (!schema_.has_relation(relation))
        throw Error("structure: unknown relation '" + relation + "'");
    if (static_cast<int>(tuple.size()) != schema_.relation_arity(relation))
        throw Error("structure: arity mismatch for relation '" + relation + "'");
    for (ElementId e : tuple)
        if (!in_domain(e)) throw Error("structure: tuple element outside domain");
}

void Structure::set_relation(const std::string& name, std::set<std::vector<ElementId>> content) {
    for (const auto& t : content) check_tuple(name, t);
    relations_[name] = std::move(content);
}

void Structure::add_tuple(const std::string& relation, const std::vector<ElementId>& tuple) {
    check_tuple(relation, tuple);
    relations_[relation].insert(tuple);
}

void Structure::remove_tuple(const std::string& relation, const std::vector<ElementId>& tuple) {
    check_tuple(relation, tuple);
    relations_[relation].erase(tuple);
}

ElementId Structure::constant(const std::string& name) const {
    auto it = constants_.find(name);
    if (it == constants_.end()) throw Error("structure: constant '" + name + "' not interpreted");
    return it->second;
}

void Structure::set_constant(const std::string& name, ElementId value) {
    if (!schema_.has_constant(name)) throw Error("structure: unknown constant '" + name + "'");
    if (!in_domain(value)) throw Error("structure: constant value outside domain");
    constants_[name] = value;
}

const FunctionInterp& Structure::function(const std::string& name) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) throw Error("structure: unknown function '" + name + "'");
    return it->second;
}

FunctionInterp& Structure::function(const std::string& name) {
    auto it = functions_.find(name);
    if (it == functions_.end()) throw Error("structure: unknown function '" + name + "'");
    return it->second;
}

ElementId Structure::apply_function(const std::string& name,
                                    const std::vector<ElementId>& args) const {
    if (static_cast<int>(args.size()) != schema_.function_arity(name))
        throw Error("structure: arity mismatch for function '" + name + "'");
    return function(name).value(args);
}

std::vector<std::vector<ElementId>> Structure::all_tuples(int arity) const {
    std::vector<std::vector<ElementId>> out;
    std::vector<ElementId> cur(arity);
    if (arity == 0) {
        out.push_back({});
        return out;
    }
    if (domain_.empty()) return out;
    std::vector<std::size_t> idx(arity, 0);
    while (true) {
        for (int i = 0; i < arity; ++i) cur[i] = domain_[idx[i]];
        out.push_back(cur);
        int pos = arity - 1;
        while (pos >= 0 && ++idx[pos] == domain_.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

bool Structure::operator==(const Structure& other) const {
    return schema_ == other.schema_ && domain_ == other.domain_ && labels_ == other.labels_ &&
           relations_ == other.relations_ && constants_ == other.constants_ &&
           functions_ == other.functions_;
}

Structure apply_modification(const Structure& db, const Modification& m) {
    if (!db.schema().has_relation(m.relation))
        throw Error("apply_modification: unknown relation '" + m.relation + "'");
    if (static_cast<int>(m.tuple.size()) != db.schema().relation_arity(m.relation))
        throw Error("apply_modification: arity mismatch for '" + m.relation + "'");
    Structure out = db;
    if (m.kind == ModKind::Insert)
        out.add_tuple(m.relation, m.tuple);
    else
        out.remove_tuple(m.relation, m.tuple);
    return out;
}

Structure induced_substructure(const Structure& s, const std::set<ElementId>& d) {
    for (ElementId e : d)
        if (!s.in_domain(e)) throw Error("induced_substructure: element outside domain");
    for (const auto& name : s.schema().constants())
        if (!d.count(s.constant(name)))
            throw Error("induced_substructure: constant '" + name + "' not in subset");

    std::vector<ElementId> dom(d.begin(), d.end());
    auto keep = [&](const std::vector<ElementId>& t) {
        for (ElementId e : t)
            if (!d.count(e)) return false;
        return true;
    };
    // closure check for functions over d^ar
    for (const auto& [fname, ar] : s.schema().functions()) {
        std::vector<std::size_t> idx(ar, 0);
        std::vector<ElementId> cur;
        if (ar == 0) {
            if (!d.count(s.apply_function(fname, {})))
                throw Error("induced_substructure: not closed under function '" + fname + "'");
        } else if (!dom.empty()) {
            while (true) {
                cur.clear();
                for (int i = 0; i < ar; ++i) cur.push_back(dom[idx[i]]);
                if (!d.count(s.apply_function(fname, cur)))
                    throw Error("induced_substructure: not closed under function '" + fname +
                                "'");
                int pos = ar - 1;
                while (pos >= 0 && ++idx[pos] == dom.size()) idx[pos--] = 0;
                if (pos < 0) break;
            }
        }
    }
    std::vector<Element> elems;
    for (ElementId e : dom) elems.push_back({e, s.label(e)});
    Structure outp(s.schema(), elems);  // ids preserved
    std::map<ElementId, ElementId> remap;
    for (ElementId e : dom) remap[e] = e;
    for (const auto& [rname, ar] : s.schema().relations()) {
        std::set<std::vector<ElementId>> content;
        for (const auto& t : s.relation(rname)) {
            if (!keep(t)) continue;
            std::vector<ElementId> mt;
            for (ElementId e : t) mt.push_back(remap.at(e));
            content.insert(mt);
        }
        outp.set_relation(rname, std::move(content));
    }
    for (const auto& cname : s.schema().constants())
        outp.set_constant(cname, remap.at(s.constant(cname)));
    for (const auto& [fname, ar] : s.schema().functions()) {
        FunctionInterp& f = outp.function(fname);
        std::vector<std::size_t> idx(ar, 0);
        if (ar == 0) {
            f.except.clear();
            f.def = remap.at(s.apply_function(fname, {}));
        } else if (!dom.empty()) {
            std::vector<ElementId> cur;
            while (true) {
                cur.clear();
                for (int i = 0; i < ar; ++i) cur.push_back(dom[idx[i]]);
                std::vector<ElementId> margs;
                for (ElementId e : cur) margs.push_back(remap.at(e));
                f.set(margs, remap.at(s.apply_function(fname, cur)));
                int pos = ar - 1;
                while (pos >= 0 && ++idx[pos] == dom.size()) idx[pos--] = 0;
                if (pos < 0) break;
            }
        }
    }
    return outp;
}

namespace {

std::string render_tuple(const std::vector<std::string>& args) {
    std::string out = "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += args[i];
    }
    return out + ")";
}

}  // namespace

std::string AtomicType::key() const {
    std::string out;
    for (const auto& a : atoms) {
        out += a;
        out += ';';
    }
    return out;
}

AtomicType atomic_type(const Structure& s, const std::vector<ElementId>& tuple) {
    const int k = static_cast<int>(tuple.size());
    for (ElementId e : tuple)
        if (!s.in_domain(e)) throw Error("atomic_type: element outside domain");

    // atom arguments: variables x1..xk and the constant names
    struct Arg {
        std::string name;
        ElementId value;
    };
    std::vector<Arg> args;
    for (int i = 0; i < k; ++i) args.push_back({"x" + std::to_string(i + 1), tuple[i]});
    for (const auto& c : s.schema().constants()) args.push_back({c, s.constant(c)});

    std::vector<std::string> atoms;
    // equalities between variables, and between variables and constants
    for (std::size_t i = 0; i < args.size(); ++i)
        for (std::size_t j = i + 1; j < args.size(); ++j)
            if (args[i].value == args[j].value)
                atoms.push_back(args[i].name + "=" + args[j].name);
    // relation atoms over all argument combinations
    for (const auto& [rname, ar] : s.schema().relations()) {
        std::vector<std::size_t> idx(ar, 0);
        if (ar == 0) {
            if (s.holds(rname, {})) atoms.push_back(rname + "()");
            continue;
        }
        if (args.empty()) continue;
        while (true) {
            std::vector<ElementId> t;
            std::vector<std::string> names;
            for (int i = 0; i < ar; ++i) {
                t.push_back(args[idx[i]].value);
                names.push_back(args[idx[i]].name);
            }
            if (s.holds(rname, t)) atoms.push_back(rname + render_tuple(names));
            int pos = ar - 1;
            while (pos >= 0 && ++idx[pos] == args.size()) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }
    std::sort(atoms.begin(), atoms.end());
    return AtomicType{std::move(atoms)};
}

namespace {

bool check_partial(const Structure& a, const Structure& b,
                   const std::map<ElementId, ElementId>& fwd,
                   const std::map<ElementId, ElementId>& bwd, ElementId just_assigned) {
    // relations: every tuple of a fully inside dom(fwd) that touches the new
    // element must map into b, and conversely
    for (const auto& [rname, ar] : a.schema().relations()) {
        for (const auto& t : a.relation(rname)) {
            bool touches = false, complete = true;
            for (ElementId e : t) {
                if (e == just_assigned) touches = true;
                if (!fwd.count(e)) complete = false;
            }
            if (!touches || !complete) continue;
            std::vector<ElementId> mt;
            for (ElementId e : t) mt.push_back(fwd.at(e));
            if (!b.holds(rname, mt)) return false;
        }
        ElementId img = fwd.at(just_assigned);
        for (const auto& t : b.relation(rname)) {
            bool touches = false, complete = true;
            for (ElementId e : t) {
                if (e == img) touches = true;
                if (!bwd.count(e)) complete = false;
            }
            if (!touches || !complete) continue;
            std::vector<ElementId> mt;
            for (ElementId e : t) mt.push_back(bwd.at(e));
            if (!a.holds(rname, mt)) return false;
        }
    }
    return true;
}

bool check_functions(const Structure& a, const Structure& b,
                     const std::map<ElementId, ElementId>& fwd) {
    for (const auto& [fname, ar] : a.schema().functions()) {
        // semantic check over the full domain (desk scale only)
        std::vector<ElementId> dom = a.domain();
        std::vector<std::size_t> idx(ar, 0);
        if (ar == 0) {
            if (fwd.at(a.apply_function(fname, {})) != b.apply_function(fname, {})) return false;
            continue;
        }
        if (dom.empty()) continue;
        std::vector<ElementId> cur, img;
        while (true) {
            cur.clear();
            img.clear();
            for (int i = 0; i < ar; ++i) {
                cur.push_back(dom[idx[i]]);
                img.push_back(fwd.at(dom[idx[i]]));
            }
            if (fwd.at(a.apply_function(fname, cur)) != b.apply_function(fname, img))
                return false;
            int pos = ar - 1;
            while (pos >= 0 && ++idx[pos] == dom.size()) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }
    return true;
}

bool extend_iso(const Structure& a, const Structure& b, std::size_t next,
                std::map<ElementId, ElementId>& fwd, std::map<ElementId, ElementId>& bwd) {
    if (next == a.domain().size()) return check_functions(a, b, fwd);
    ElementId x = a.domain()[next];
    for (ElementId y : b.domain()) {
        if (bwd.count(y)) continue;
        fwd[x] = y;
        bwd[y] = x;
        bool ok = check_partial(a, b, fwd, bwd, x);
        // constants must correspond
        if (ok)
            for (const auto& c : a.schema().constants())
                if (a.constant(c) == x && b.constant(c) != y) {
                    ok = false;
                    break;
                }
        if (ok)
            for (const auto& c : a.schema().constants())
                if (b.constant(c) == y && a.constant(c) != x) {
                    ok = false;
                    break;
                }
        if (ok && extend_iso(a, b, next + 1, fwd, bwd)) return true;
        fwd.erase(x);
        bwd.erase(y);
    }
    return false;
}

}  // namespace

std::optional<std::map<ElementId, ElementId>> find_isomorphism(const Structure& a,
                                                               const Structure& b) {
    if (a.schema() != b.schema()) throw Error("find_isomorphism: schema mismatch");
    if (a.size() != b.size()) return std::nullopt;
    for (const auto& [rname, ar] : a.schema().relations())
        if (a.relation(rname).size() != b.relation(rname).size()) return std::nullopt;
    std::map<ElementId, ElementId> fwd, bwd;
    if (extend_iso(a, b, 0, fwd, bwd)) return fwd;
    return std::nullopt;
}

}  // namespace dyncomp
