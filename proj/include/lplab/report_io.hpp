#pragma once

#include "lplab/harness.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace lplab {

/// A config document that could not be turned into a SweepConfig. `line` is 0 when
/// no position in the source text applies.
class ConfigFileError : public std::runtime_error {
public:
    ConfigFileError(const std::string& message, int line) : std::runtime_error(message), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

nlohmann::json config_to_json(const SweepConfig& config);

/**
 * Builds a config from a JSON document. Fields that are absent keep the suite
 * defaults (the n = 2 variant when grid.n is 2); unknown fields are rejected.
 * Throws ConfigError with the JSON pointer of the offending field.
 */
SweepConfig config_from_json(const nlohmann::json& doc);

/// "params.s=[0.5]" style override; the value is parsed as JSON and falls back to a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Parses text, applies overrides, validates. Throws ConfigFileError naming the line.
SweepConfig parse_config_text(const std::string& text, const std::string& source_name,
                              const std::vector<std::string>& overrides = {});

nlohmann::json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& doc);
/// report_to_json without the metadata block, for reproducibility comparisons.
nlohmann::json report_numbers(const VerificationReport& report);

/// Writes report.json, table.csv, plot-curves.csv, plot-histogram.csv and summary.txt.
/// Throws std::runtime_error when the directory cannot be written.
void write_report(const VerificationReport& report, const std::filesystem::path& directory);

std::string summary_text(const VerificationReport& report);

}  // namespace lplab
