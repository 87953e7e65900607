#include "dyncomp/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dyncomp/parse.hpp"

namespace dyncomp {

// --- SHA-256 (FIPS 180-4), self-contained ---

namespace {

constexpr std::uint32_t sha_k[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4, 0xab1c5ed5,
    0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174,
    0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967,
    0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85,
    0xa2bfe8a1, 0xa81a664b, 0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

}  // namespace

std::string sha256_hex(const std::string& data) {
    std::uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                          0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::string msg = data;
    std::uint64_t bits = static_cast<std::uint64_t>(msg.size()) * 8;
    msg += '\x80';
    while (msg.size() % 64 != 56) msg += '\0';
    for (int i = 7; i >= 0; --i) msg += static_cast<char>((bits >> (8 * i)) & 0xff);
    for (std::size_t block = 0; block < msg.size(); block += 64) {
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (static_cast<std::uint8_t>(msg[block + 4 * i]) << 24) |
                   (static_cast<std::uint8_t>(msg[block + 4 * i + 1]) << 16) |
                   (static_cast<std::uint8_t>(msg[block + 4 * i + 2]) << 8) |
                   static_cast<std::uint8_t>(msg[block + 4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3];
        std::uint32_t e = h[4], f = h[5], g = h[6], hh = h[7];
        for (int i = 0; i < 64; ++i) {
            std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            std::uint32_t ch = (e & f) ^ (~e & g);
            std::uint32_t t1 = hh + s1 + ch + sha_k[i] + w[i];
            std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            std::uint32_t t2 = s0 + maj;
            hh = g, g = f, f = e, e = d + t1, d = c, c = b, b = a, a = t1 + t2;
        }
        h[0] += a, h[1] += b, h[2] += c, h[3] += d;
        h[4] += e, h[5] += f, h[6] += g, h[7] += hh;
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (std::uint32_t v : h)
        for (int i = 7; i >= 0; --i) out += hex[(v >> (4 * i)) & 0xf];
    return out;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
    return {{"command", m.command},
            {"inputs", m.input_digests},
            {"seed", m.seed},
            {"parameters", m.parameters},
            {"version", m.version}};
}

nlohmann::json schema_to_json(const Schema& s) {
    return {{"relations", s.relations()},
            {"constants", s.constants()},
            {"functions", s.functions()}};
}

Schema schema_from_json(const nlohmann::json& j) {
    Schema s;
    for (const auto& [name, ar] : j.at("relations").items()) s.add_relation(name, ar.get<int>());
    for (const auto& name : j.at("constants")) s.add_constant(name.get<std::string>());
    for (const auto& [name, ar] : j.at("functions").items()) s.add_function(name, ar.get<int>());
    return s;
}

nlohmann::json structure_to_json(const Structure& s) {
    nlohmann::json j;
    j["schema"] = schema_to_json(s.schema());
    std::vector<std::string> labels;
    for (ElementId e : s.domain()) labels.push_back(s.label(e));
    j["domain"] = labels;
    nlohmann::json rels = nlohmann::json::object();
    for (const auto& [name, ar] : s.schema().relations()) {
        nlohmann::json tuples = nlohmann::json::array();
        for (const auto& t : s.relation(name)) {
            std::vector<std::string> tl;
            for (ElementId e : t) tl.push_back(s.label(e));
            tuples.push_back(tl);
        }
        rels[name] = tuples;
    }
    j["relations"] = rels;
    nlohmann::json consts = nlohmann::json::object();
    for (const auto& name : s.schema().constants()) consts[name] = s.label(s.constant(name));
    j["constants"] = consts;
    nlohmann::json fns = nlohmann::json::object();
    for (const auto& [name, ar] : s.schema().functions()) {
        const auto& fi = s.function(name);
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& [args, value] : fi.except) {
            std::vector<std::string> row;
            for (ElementId e : args) row.push_back(s.label(e));
            row.push_back(s.label(value));
            entries.push_back(row);
        }
        fns[name] = {{"default", s.label(fi.def)}, {"entries", entries}};
    }
    j["functions"] = fns;
    return j;
}

Structure structure_from_json(const nlohmann::json& j) {
    Schema schema = schema_from_json(j.at("schema"));
    std::vector<std::string> labels = j.at("domain").get<std::vector<std::string>>();
    Structure s(schema, labels);
    for (const auto& [name, tuples] : j.at("relations").items())
        for (const auto& t : tuples) {
            std::vector<ElementId> tuple;
            for (const auto& l : t) tuple.push_back(s.element(l.get<std::string>()));
            s.add_tuple(name, tuple);
        }
    for (const auto& [name, label] : j.at("constants").items())
        s.set_constant(name, s.element(label.get<std::string>()));
    for (const auto& [name, fj] : j.at("functions").items()) {
        auto& fi = s.function(name);
        fi.def = s.element(fj.at("default").get<std::string>());
        for (const auto& row : fj.at("entries")) {
            std::vector<ElementId> args;
            for (const auto& l : row) args.push_back(s.element(l.get<std::string>()));
            ElementId value = args.back();
            args.pop_back();
            fi.set(args, value);
        }
    }
    return s;
}

namespace {

std::string kind_name(ModKind k) { return k == ModKind::Insert ? "ins" : "del"; }

ModKind kind_of(const std::string& name) {
    if (name == "ins") return ModKind::Insert;
    if (name == "del") return ModKind::Delete;
    throw Error("unknown modification kind: " + name);
}

nlohmann::json pattern_to_json(const SubgraphPattern& h) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : h.edges) edges.push_back({a, b});
    return {{"nodes", h.node_count}, {"edges", edges}};
}

SubgraphPattern pattern_from_json(const nlohmann::json& j) {
    SubgraphPattern h;
    h.node_count = j.at("nodes").get<int>();
    for (const auto& e : j.at("edges")) h.edges.insert({e.at(0).get<int>(), e.at(1).get<int>()});
    return h;
}

}  // namespace

nlohmann::json program_to_json(const DynamicProgram& p) {
    nlohmann::json j;
    j["input_schema"] = schema_to_json(p.input_schema);
    j["aux_schema"] = schema_to_json(p.aux_schema);
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& [key, rule] : p.rules) {
        nlohmann::json r = {{"symbol", key.aux_symbol},
                            {"kind", kind_name(key.kind)},
                            {"input", key.input_relation},
                            {"mod_vars", rule.mod_vars},
                            {"tuple_vars", rule.tuple_vars}};
        if (rule.formula) r["formula"] = to_text(rule.formula);
        if (rule.term) r["term"] = to_text(rule.term);
        rules.push_back(r);
    }
    j["rules"] = rules;
    nlohmann::json init;
    switch (p.initializer.kind) {
        case Initializer::Kind::Empty: init["kind"] = "empty"; break;
        case Initializer::Kind::ThreeClique: init["kind"] = "three_clique"; break;
        case Initializer::Kind::SubgraphExtends: init["kind"] = "subgraph_extends"; break;
        case Initializer::Kind::MaxOutdegree: init["kind"] = "max_outdegree"; break;
        case Initializer::Kind::Padding: init["kind"] = "padding"; break;
    }
    if (p.initializer.kind == Initializer::Kind::SubgraphExtends) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& e : p.initializer.entries)
            entries.push_back({{"relation", e.relation},
                               {"pattern", pattern_to_json(e.pattern)},
                               {"y_nodes", e.y_nodes}});
        init["entries"] = entries;
    }
    if (p.initializer.kind == Initializer::Kind::Padding) {
        const auto& pad = p.initializer.padding;
        std::string table;
        for (bool bit : pad.truth_table) table += bit ? '1' : '0';
        init["padding"] = {
            {"variant", pad.variant == PaddingVariant::Ternary ? "ternary" : "binary"},
            {"n_plus", pad.n_plus},
            {"truth_table", table}};
    }
    j["initializer"] = init;
    j["query"] = p.query_symbol;
    j["supports"] = {{"insert", p.supports_insert}, {"delete", p.supports_delete}};
    return j;
}

DynamicProgram program_from_json(const nlohmann::json& j) {
    DynamicProgram p;
    p.input_schema = schema_from_json(j.at("input_schema"));
    p.aux_schema = schema_from_json(j.at("aux_schema"));
    Schema combined = p.combined_schema();
    for (const auto& r : j.at("rules")) {
        RuleKey key{r.at("symbol").get<std::string>(), kind_of(r.at("kind").get<std::string>()),
                    r.at("input").get<std::string>()};
        UpdateRule rule;
        rule.mod_vars = r.at("mod_vars").get<std::vector<std::string>>();
        rule.tuple_vars = r.at("tuple_vars").get<std::vector<std::string>>();
        if (r.contains("formula"))
            rule.formula = parse_formula(r.at("formula").get<std::string>(), combined);
        if (r.contains("term")) rule.term = parse_term(r.at("term").get<std::string>(), combined);
        p.rules[key] = rule;
    }
    const auto& init = j.at("initializer");
    std::string kind = init.at("kind").get<std::string>();
    if (kind == "empty")
        p.initializer.kind = Initializer::Kind::Empty;
    else if (kind == "three_clique")
        p.initializer.kind = Initializer::Kind::ThreeClique;
    else if (kind == "subgraph_extends")
        p.initializer.kind = Initializer::Kind::SubgraphExtends;
    else if (kind == "max_outdegree")
        p.initializer.kind = Initializer::Kind::MaxOutdegree;
    else if (kind == "padding")
        p.initializer.kind = Initializer::Kind::Padding;
    else
        throw Error("unknown initializer kind: " + kind);
    if (init.contains("entries"))
        for (const auto& e : init.at("entries"))
            p.initializer.entries.push_back({e.at("relation").get<std::string>(),
                                             pattern_from_json(e.at("pattern")),
                                             e.at("y_nodes").get<std::vector<int>>()});
    if (init.contains("padding")) {
        const auto& pad = init.at("padding");
        p.initializer.padding.variant = pad.at("variant").get<std::string>() == "ternary"
                                            ? PaddingVariant::Ternary
                                            : PaddingVariant::Binary;
        p.initializer.padding.n_plus = pad.at("n_plus").get<int>();
        for (char c : pad.at("truth_table").get<std::string>())
            p.initializer.padding.truth_table.push_back(c == '1');
    }
    p.query_symbol = j.at("query").get<std::string>();
    p.supports_insert = j.at("supports").at("insert").get<bool>();
    p.supports_delete = j.at("supports").at("delete").get<bool>();
    p.validate();
    return p;
}

nlohmann::json difftest_report_to_json(const DifftestReport& r) {
    nlohmann::json mismatches = nlohmann::json::array();
    for (const auto& m : r.mismatches) {
        nlohmann::json mods = nlohmann::json::array();
        for (const auto& mod : m.mods) {
            std::vector<std::string> t;
            for (ElementId e : mod.tuple) t.push_back(std::to_string(e));
            mods.push_back({{"kind", kind_name(mod.kind)}, {"relation", mod.relation},
                            {"tuple", t}});
        }
        mismatches.push_back({{"sequence", m.sequence},
                              {"prefix", m.prefix},
                              {"expected", m.expected},
                              {"got", m.got},
                              {"mods", mods}});
    }
    return {{"parameters",
             {{"domain_size", r.params.domain_size},
              {"sequences", r.params.sequences},
              {"length", r.params.length},
              {"seed", r.params.seed},
              {"allow_loops", r.params.allow_loops}}},
            {"checks", r.checks},
            {"mismatches", mismatches},
            {"ok", r.ok()}};
}

std::string to_artifact_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

ModSequence parse_mod_script(const std::string& text, const Structure& db) {
    ModSequence out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        Modification m;
        m.kind = kind_of(word);
        if (!(ls >> m.relation)) throw Error("script line " + std::to_string(lineno) +
                                             ": missing relation");
        if (!db.schema().has_relation(m.relation))
            throw Error("script line " + std::to_string(lineno) + ": unknown relation " +
                        m.relation);
        std::string label;
        while (ls >> label) m.tuple.push_back(db.element(label));
        if (static_cast<int>(m.tuple.size()) != db.schema().relation_arity(m.relation))
            throw Error("script line " + std::to_string(lineno) + ": arity mismatch for " +
                        m.relation);
        out.push_back(std::move(m));
    }
    return out;
}

std::string emit_mod_script(const ModSequence& ms, const Structure& db) {
    std::string out;
    for (const auto& m : ms) {
        out += kind_name(m.kind) + " " + m.relation;
        for (ElementId e : m.tuple) out += " " + db.label(e);
        out += "\n";
    }
    return out;
}

std::string trace_line(const DynamicProgram& p, int index, const Modification& m,
                       const ProgramState& before, const ProgramState& after) {
    std::string out = std::to_string(index) + "\t" + kind_name(m.kind) + " " + m.relation;
    for (ElementId e : m.tuple) out += " " + after.structure.label(e);
    if (p.aux_schema.relation_arity(p.query_symbol) == 0) {
        out += "\tQ=" + std::string(after.query_bit(p) ? "1" : "0") + "\t";
    } else {
        out += "\tQ={";
        bool first = true;
        for (const auto& t : after.structure.relation(p.query_symbol)) {
            if (!first) out += ";";
            first = false;
            for (std::size_t i = 0; i < t.size(); ++i)
                out += (i ? "," : "") + after.structure.label(t[i]);
        }
        out += "}\t";
    }
    std::vector<std::string> deltas;
    for (const auto& [name, ar] : p.aux_schema.relations()) {
        auto render = [&](const std::vector<ElementId>& t, char sign) {
            std::string s(1, sign);
            s += name + "(";
            for (std::size_t i = 0; i < t.size(); ++i)
                s += (i ? "," : "") + after.structure.label(t[i]);
            return s + ")";
        };
        for (const auto& t : after.structure.relation(name))
            if (!before.structure.holds(name, t)) deltas.push_back(render(t, '+'));
        for (const auto& t : before.structure.relation(name))
            if (!after.structure.holds(name, t)) deltas.push_back(render(t, '-'));
    }
    std::sort(deltas.begin(), deltas.end());
    for (std::size_t i = 0; i < deltas.size(); ++i) out += (i ? " " : "") + deltas[i];
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

}  // namespace dyncomp
