#pragma once

#include "pvss/specseq.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace pvss {

/// Malformed input file: bad syntax, missing or mistyped fields.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads a system description. Throws ParseError for structural problems
/// and std::invalid_argument for dimension or invariant violations.
ActionSpec parse_system_file(const std::string& text);

/// Bare matrix input for the snf subcommand: an array of rows.
IntMatrix parse_bare_matrix(const std::string& text);

nlohmann::json group_json(const FgAbGroup& g);
nlohmann::json matrix_json(const IntMatrix& m);
nlohmann::json extension_report_json(const ExtensionReport& r);
nlohmann::json pages_json(const RunResult& run, const std::string& input_text);
nlohmann::json crossed_json(const CrossedResult& res, const std::string& input_text);

/// FNV-1a of the input text, printed as hex; ties a result to its input.
std::string input_hash(const std::string& text);

/// ASCII grid, one table per page, cells in "Z^r + Z/t" form.
std::string render_pages_table(const RunResult& run);
std::string render_crossed_table(const CrossedResult& res);

}  // namespace pvss
