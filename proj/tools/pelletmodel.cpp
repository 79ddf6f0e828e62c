// Command-line front end: residue assessment, break-even prices, fuel
// replacement, price sweeps and production growth statistics.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pellet/csv.hpp"
#include "pellet/kernels/batch.hpp"
#include "pellet/pipeline.hpp"
#include "pellet/report.hpp"
#include "pellet/sensitivity.hpp"

namespace fs = std::filesystem;
using namespace pellet;

namespace {

struct Common {
    std::string data;
    std::string config;
    std::string scenario;
    std::optional<double> carbon_tax;
    std::string out = "out";
    std::string format = "csv";
    std::string country;
    unsigned jobs = 1;
    std::string isa = "auto";
};

void add_common(CLI::App* cmd, Common& o) {
    cmd->add_option("--data", o.data, "Dataset directory (default: $PELLET_DATA_DIR)");
    cmd->add_option("--config", o.config, "Model config JSON (default: <data>/config.json if present)");
    cmd->add_option("--scenario", o.scenario, "Replacement scenario")->check(CLI::IsMember({"A", "B", "C"}));
    cmd->add_option("--carbon-tax", o.carbon_tax, "Carbon tax, $/tCO2e (scenario C)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_option("--country", o.country, "Evaluate a single country");
    cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--isa", o.isa, "Batch kernel set")->check(CLI::IsMember({"auto", "scalar", "avx2"}))->capture_default_str();
}

Dataset load(const Common& o) {
    fs::path dir = o.data;
    if (dir.empty()) {
        const char* env = std::getenv("PELLET_DATA_DIR");
        if (!env || !*env) throw std::runtime_error("no dataset: pass --data or set PELLET_DATA_DIR");
        dir = env;
    }
    ModelConfig cfg;
    if (!o.config.empty()) cfg = load_config(o.config);
    else if (fs::exists(dir / "config.json")) cfg = load_config(dir / "config.json");
    if (!o.scenario.empty()) cfg.scenario = *parse_scenario(o.scenario);
    if (o.carbon_tax) cfg.carbon_tax = *o.carbon_tax;
    cfg.validate();
    return load_dataset(DataPaths{dir, {}, {}, {}}, cfg);
}

void apply_isa(const Common& o) {
    if (o.isa == "auto") kernels::set_isa_override(std::nullopt);
    else kernels::set_isa_override(kernels::parse_isa(o.isa));
}

report::Format format_of(const Common& o) { return o.format == "json" ? report::Format::json : report::Format::csv; }

int run_stage(const Common& o, Stage stage) {
    apply_isa(o);
    const Dataset d = load(o);
    RunOptions opt{stage, o.jobs, std::nullopt};
    if (!o.country.empty()) opt.country = o.country;
    const auto result = run_pipeline(d, opt);
    const auto files = report::write_pipeline(result, o.out, format_of(o));

    const auto& g = result.global;
    std::cout << "countries: " << g.countries << "\n"
              << "cr_final_t: " << csv::format_number(g.cr_final) << "\n"
              << "pellet_energy_tj: " << csv::format_number(g.pellet_energy) << "\n";
    if (stage >= Stage::msp && g.mean_msp) std::cout << "mean_msp_usd_per_t: " << csv::format_number(*g.mean_msp) << "\n";
    if (stage >= Stage::recop)
        std::cout << "scenario: " << to_string(result.scenario) << "\n"
                  << "s_ec_usd_per_y: " << csv::format_number(g.s_ec) << "\n"
                  << "s_em_kg_per_y: " << csv::format_number(g.s_em) << "\n"
                  << "replaced_fraction: " << csv::format_number(g.replaced_fraction) << "\n";
    std::cout << "wrote:";
    for (const auto& f : files) std::cout << ' ' << (fs::path(o.out) / f).string();
    std::cout << "\n";

    if (!result.errors.empty()) {
        std::cerr << result.errors.size() << " country error(s); see " << (fs::path(o.out) / "errors.txt").string()
                  << "\n";
        return 1;
    }
    return 0;
}

int run_sweep(const Common& o) {
    apply_isa(o);
    const Dataset d = load(o);
    const auto grid = sweep(d, d.config, o.jobs);
    const auto files = report::write_sensitivity(grid, o.out, format_of(o));
    std::cout << "cells: " << grid.cells.size() << "\n";
    if (grid.baseline)
        std::cout << "baseline_s_ec_usd_per_y: " << csv::format_number(grid.baseline->s_ec) << "\n";
    else
        std::cout << "baseline: unavailable (" << grid.baseline_note << ")\n";
    std::cout << "wrote:";
    for (const auto& f : files) std::cout << ' ' << (fs::path(o.out) / f).string();
    std::cout << "\n";
    return 0;
}

// Input: CSV with columns year,value and an optional leading series column.
int run_yoy(const std::string& input, const std::string& out_dir) {
    const auto table = csv::parse(csv::read_file(input));
    const auto& h = table.header;
    const bool named = !h.empty() && h[0] == "series";
    const std::size_t yc = named ? 1 : 0;
    if (h.size() != yc + 2 || h[yc] != "year" || h[yc + 1] != "value")
        throw std::runtime_error(input + ": expected header [series,]year,value");

    std::map<std::string, std::vector<std::pair<int, double>>> series;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const auto where = input + ":" + std::to_string(table.line_numbers[i]);
        if (row.size() != h.size()) throw std::runtime_error(where + ": wrong field count");
        const auto year = csv::parse_number(row[yc]);
        const auto value = csv::parse_number(row[yc + 1]);
        if (!year || !value) throw std::runtime_error(where + ": year and value are required");
        series[named ? row[0] : "series"].emplace_back(static_cast<int>(*year), *value);
    }

    std::string text = csv::join_row({"series", "from_year", "to_year", "growth"});
    std::string summary = csv::join_row({"series", "average_growth"});
    for (auto& [name, points] : series) {
        std::sort(points.begin(), points.end());
        const auto g = yoy_growth(points);
        for (const auto& s : g.steps)
            text += csv::join_row({name, std::to_string(s.from_year), std::to_string(s.to_year),
                                   csv::format_number(s.growth)});
        summary += csv::join_row({name, csv::format_number(g.average)});
    }
    std::cout << summary;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        report::write_text(fs::path(out_dir) / "yoy.csv", text);
        report::write_text(fs::path(out_dir) / "yoy_summary.csv", summary);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crop-residue pellet model: residues, break-even prices, fuel replacement"};
    app.require_subcommand(1);

    Common assess_o, msp_o, recop_o, report_o, sweep_o;
    auto* assess = app.add_subcommand("assess", "Residue availability and pellet energy");
    auto* msp = app.add_subcommand("msp", "Break-even pellet price per country");
    auto* recop = app.add_subcommand("recop", "Fossil fuel replacement plans");
    auto* full = app.add_subcommand("report", "Full per-country pipeline");
    auto* sweep_cmd = app.add_subcommand("sweep", "Fossil price x pellet price sensitivity grid");
    add_common(assess, assess_o);
    add_common(msp, msp_o);
    add_common(recop, recop_o);
    add_common(full, report_o);
    add_common(sweep_cmd, sweep_o);

    std::string yoy_input, yoy_out;
    auto* yoy = app.add_subcommand("yoy", "Year-on-year growth of production series");
    yoy->add_option("--input", yoy_input, "CSV with [series,]year,value")->required()->check(CLI::ExistingFile);
    yoy->add_option("--out", yoy_out, "Also write yoy.csv and yoy_summary.csv here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*assess) return run_stage(assess_o, Stage::residue);
        if (*msp) return run_stage(msp_o, Stage::msp);
        if (*recop) return run_stage(recop_o, Stage::recop);
        if (*full) return run_stage(report_o, Stage::recop);
        if (*sweep_cmd) return run_sweep(sweep_o);
        if (*yoy) return run_yoy(yoy_input, yoy_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
