#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pellet/pipeline.hpp"
#include "pellet/sensitivity.hpp"

namespace pellet::report {

enum class Format { csv, json };

/// Wide table, one row per country. Columns depend only on the stage.
std::string countries_csv(const PipelineResult& result);
std::vector<std::string> countries_csv_columns(Stage stage);

/// Nested per-country objects, including the cash-flow trace and provenance.
std::string countries_json(const PipelineResult& result);

std::string global_json(const PipelineResult& result);

/// One line per failing country: "<country>: <message>".
std::string errors_txt(const PipelineResult& result);

/// Plot-ready long tables.
std::string residue_long_csv(const PipelineResult& result);      // country x crop
std::string replacement_long_csv(const PipelineResult& result);  // country x fuel
std::string msp_long_csv(const PipelineResult& result);          // country, msp, cost split

std::string sensitivity_json(const SensitivityGrid& grid);

/// Writes every report file for the result into `dir`, creating it if needed.
/// Returns the written file names in write order.
std::vector<std::string> write_pipeline(const PipelineResult& result, const std::filesystem::path& dir,
                                        Format format);
std::vector<std::string> write_sensitivity(const SensitivityGrid& grid, const std::filesystem::path& dir,
                                           Format format);

void write_text(const std::filesystem::path& file, const std::string& text);

}  // namespace pellet::report
