#pragma once

#include <string>

#include "json.hpp"
#include "orlab/experiments.hpp"

namespace orlab {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Current document schema; parsers reject newer majors.
inline constexpr const char* kSchemaVersion = "1.0";

/// 17 significant digits: enough for bitwise double round-trips.
std::string format_double(double v);
double parse_double(const std::string& s);

/// Write content to path via a temp file and rename, so a partial
/// output is never left behind.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

nlohmann::json trace_to_json(const GreedyTrace& trace);
GreedyTrace trace_from_json(const nlohmann::json& doc);

nlohmann::json profile_to_json(const PropertyProfile& profile);
PropertyProfile profile_from_json(const nlohmann::json& doc);

/// Tab-delimited table with one header row; floats at 17 significant
/// digits, deterministic row order as given.
std::string table_to_text(const std::vector<SweepRow>& rows);

struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::vector<double> column(const std::string& name) const;
};

TextTable parse_table(const std::string& text);

}  // namespace orlab
