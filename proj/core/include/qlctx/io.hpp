#pragma once

// File formats: context JSON, report JSON, sequence CSV, and the text
// rendering of any JSON report. Schemas are documented in docs/formats.md.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qlctx/context.hpp"
#include "qlctx/density.hpp"
#include "qlctx/frequency.hpp"
#include "qlctx/report.hpp"

namespace qlctx::io {

/// Parses a context document. Throws SchemaError naming the offending JSON path.
ContextData parse_context(std::string_view json_text);

/// Reads and parses a context file. Throws IoError or SchemaError.
ContextData load_context(const std::filesystem::path& path);

std::string context_to_json(const ContextData& data, int indent = 2);

std::string report_to_json(const AnalysisReport& r, int indent = 2);
AnalysisReport report_from_json(std::string_view json_text);

std::string simulation_report_to_json(const SimulationReport& r, int indent = 2);
SimulationReport simulation_report_from_json(std::string_view json_text);

std::string counterexample_to_json(const CounterexampleReport& r, const Provenance& p, int indent = 2);

/// Human-readable rendering of a JSON document: one `key: value` line per
/// scalar, nested objects indented, numeric arrays inline. Scalars are printed
/// exactly as they appear in the JSON.
std::string json_to_text(std::string_view json_text);

/// Header row `<observable>,<stream>` followed by one outcome label per line.
void write_sequence_csv(const SSequence& s, std::ostream& out);

/// Inverse of write_sequence_csv. Labels are mapped to indices in order of
/// first appearance unless `alphabet` is given. Throws SchemaError.
SSequence read_sequence_csv(std::istream& in, const std::array<std::string, 2>* alphabet = nullptr);

std::string sha256_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

/// Writes `content` to `path`, replacing any existing file. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace qlctx::io
