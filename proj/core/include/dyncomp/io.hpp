#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "dyncomp/program.hpp"

namespace dyncomp {

/// SHA-256 digest of a byte string, lowercase hex.
std::string sha256_hex(const std::string& data);

/// Provenance header embedded in every emitted artifact; equal manifests
/// must yield byte-identical artifacts.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> input_digests;  // logical name -> sha256
    std::uint64_t seed = 0;
    std::map<std::string, std::string> parameters;
    std::string version = "0.1.0";
};

nlohmann::json manifest_to_json(const RunManifest& m);

// Schemas, structures and programs round-trip through JSON; objects are
// emitted with sorted keys, two-space indentation and a trailing newline,
// so equal values serialize to equal bytes.
nlohmann::json schema_to_json(const Schema& s);
Schema schema_from_json(const nlohmann::json& j);

nlohmann::json structure_to_json(const Structure& s);
Structure structure_from_json(const nlohmann::json& j);

nlohmann::json program_to_json(const DynamicProgram& p);
DynamicProgram program_from_json(const nlohmann::json& j);

nlohmann::json difftest_report_to_json(const DifftestReport& r);

/// Canonical rendering: dump(indent 2) plus trailing newline.
std::string to_artifact_text(const nlohmann::json& j);

/// Modification scripts: one modification per line, "ins REL label..." or
/// "del REL label...", '#' comments and blank lines skipped. Labels are
/// resolved against the given structure's domain.
ModSequence parse_mod_script(const std::string& text, const Structure& db);
std::string emit_mod_script(const ModSequence& ms, const Structure& db);

/// One trace record: step index, the modification, the query bit and the
/// auxiliary relation deltas (+added / -removed tuples, sorted).
std::string trace_line(const DynamicProgram& p, int index, const Modification& m,
                       const ProgramState& before, const ProgramState& after);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dyncomp
